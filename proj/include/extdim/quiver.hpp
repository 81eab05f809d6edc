#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace extdim {

struct Arrow {
    std::string id;
    int src = 0;
    int tgt = 0;
};

struct Quiver {
    std::vector<std::string> vnames;
    std::vector<Arrow> arrows;

    int nv() const { return int(vnames.size()); }
    int na() const { return int(arrows.size()); }

    int vertex(const std::string& name) const {
        for (int i = 0; i < nv(); ++i)
            if (vnames[i] == name) return i;
        throw std::out_of_range("unknown vertex: " + name);
    }
    int arrow(const std::string& id) const {
        for (int i = 0; i < na(); ++i)
            if (arrows[i].id == id) return i;
        throw std::out_of_range("unknown arrow: " + id);
    }
    bool has_arrow(const std::string& id) const {
        for (const auto& a : arrows)
            if (a.id == id) return true;
        return false;
    }

    Quiver opposite() const {
        Quiver q;
        q.vnames = vnames;
        q.arrows = arrows;
        for (auto& a : q.arrows) std::swap(a.src, a.tgt);
        return q;
    }
};

// A path is a composable arrow sequence; length 0 is the trivial path at
// `source`. Paths compose left to right: (i -> j) followed by (j -> l).
struct Path {
    int source = 0;
    std::vector<int> arrows;

    int length() const { return int(arrows.size()); }

    int target(const Quiver& q) const {
        return arrows.empty() ? source : q.arrows[size_t(arrows.back())].tgt;
    }

    bool operator==(const Path& o) const { return source == o.source && arrows == o.arrows; }
    bool operator<(const Path& o) const {
        if (source != o.source) return source < o.source;
        return arrows < o.arrows;
    }

    std::string str(const Quiver& q) const {
        if (arrows.empty()) return "e_" + q.vnames[size_t(source)];
        std::string s;
        for (size_t k = 0; k < arrows.size(); ++k) {
            if (k) s += ".";
            s += q.arrows[size_t(arrows[k])].id;
        }
        return s;
    }
};

// Canonical path order: (length, source, lexicographic arrow ids).
class PathOrder {
  public:
    explicit PathOrder(const Quiver& q) : rank_(q.na()) {
        std::vector<std::pair<std::string, int>> ids;
        for (int i = 0; i < q.na(); ++i) ids.push_back({q.arrows[size_t(i)].id, i});
        std::sort(ids.begin(), ids.end());
        for (size_t r = 0; r < ids.size(); ++r) rank_[size_t(ids[r].second)] = int(r);
    }

    bool less(const Path& a, const Path& b) const {
        if (a.length() != b.length()) return a.length() < b.length();
        if (a.source != b.source) return a.source < b.source;
        for (int k = 0; k < a.length(); ++k) {
            int ra = rank_[size_t(a.arrows[size_t(k)])];
            int rb = rank_[size_t(b.arrows[size_t(k)])];
            if (ra != rb) return ra < rb;
        }
        return false;
    }

  private:
    std::vector<int> rank_;
};

}  // namespace extdim
