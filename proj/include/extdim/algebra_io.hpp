#pragma once

// Line-oriented algebra file format.
//
//   field Q | field F <p>
//   vertices <n> | vertices <name>,<name>,...
//   arrow <id> : <src> -> <tgt>
//   relation [<c>*]<p> [+|-] [<c>*]<p> ...     paths are arrow ids joined by '.'
//   module <name> { dim = [d1,...]; map <arrow> = [[...],[...]]; }
//   golden <key> <args...>        # literature: ... | # derived: ...
//   note <free text>
//
// '#' starts a comment. Module map matrices are (dim target) x (dim source),
// acting on column vectors. The canonical pretty-printer round-trips
// byte-identically through the parser.

#include "extdim/rep.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace extdim {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

struct GoldenLine {
    std::string key;
    std::vector<std::string> args;
    std::string provenance;  // "literature: ..." or "derived: ..."
};

template <Field F>
struct AlgebraFile {
    AlgPtr<F> algebra;
    std::vector<std::pair<std::string, RepPtr<F>>> modules;  // declaration order
    std::vector<GoldenLine> golden;
    std::vector<std::string> notes;

    RepPtr<F> module(const std::string& name) const {
        for (auto& [n, m] : modules)
            if (n == name) return m;
        return nullptr;
    }
};

namespace detail {

inline std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else cur += ch;
    }
    out.push_back(strip(cur));
    return out;
}

struct Tok {
    std::vector<std::string> words;
    int line;
};

}  // namespace detail

inline FieldSpec peek_field(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::strip(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw != "field") continue;
        std::string k;
        ls >> k;
        if (k == "Q") return {FieldSpec::Kind::Rationals, 0};
        if (k == "F") {
            long long p = 0;
            if (!(ls >> p)) throw ParseError(ln, 1, "field F requires a modulus");
            return {FieldSpec::Kind::Prime, p};
        }
        throw ParseError(ln, 1, "unknown field '" + k + "' (expected Q or F <p>)");
    }
    return {FieldSpec::Kind::Rationals, 0};  // default field: rationals
}

template <Field F>
class AlgebraParser {
  public:
    AlgebraFile<F> parse(const std::string& text, int length_cap = Algebra<F>::kDefaultLengthCap) {
        fs_ = peek_field(text);
        lines_.clear();
        {
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line)) lines_.push_back(line);
        }

        struct RawRel { std::string body; int line; };
        std::vector<RawRel> raw_rels;
        struct RawMod { std::string name, body; int line; };
        std::vector<RawMod> raw_mods;
        AlgebraFile<F> out;
        bool have_vertices = false;

        for (size_t i = 0; i < lines_.size(); ++i) {
            int ln = int(i) + 1;
            std::string full = lines_[i];
            std::string comment;
            auto hash = full.find('#');
            if (hash != std::string::npos) {
                comment = detail::strip(full.substr(hash + 1));
                full = full.substr(0, hash);
            }
            std::string body = detail::strip(full);
            if (body.empty()) continue;

            std::istringstream ls(body);
            std::string kw;
            ls >> kw;
            std::string rest = detail::strip(body.substr(kw.size()));

            if (kw == "field") {
                // already handled by peek; validate shape
                auto w = detail::split(rest, ' ');
                if (!(rest == "Q" || (w.size() >= 1 && w[0].rfind("F", 0) == 0)))
                    throw ParseError(ln, 1, "malformed field line");
            } else if (kw == "vertices") {
                if (have_vertices) throw ParseError(ln, 1, "duplicate vertices line");
                have_vertices = true;
                parse_vertices(rest, ln);
            } else if (kw == "arrow") {
                parse_arrow(rest, ln);
            } else if (kw == "relation") {
                raw_rels.push_back({rest, ln});
            } else if (kw == "module") {
                auto [name, blockbody, endline] = read_block(i, "module");
                raw_mods.push_back({name, blockbody, ln});
                i = endline;
            } else if (kw == "golden") {
                GoldenLine g;
                std::istringstream gs(rest);
                if (!(gs >> g.key)) throw ParseError(ln, 1, "golden line without key");
                std::string a;
                while (gs >> a) g.args.push_back(a);
                if (comment.rfind("literature:", 0) == 0 || comment.rfind("derived:", 0) == 0)
                    g.provenance = comment;
                else
                    throw ParseError(ln, 1,
                                     "golden value lacks a provenance comment "
                                     "(# literature: ... or # derived: ...)");
                out.golden.push_back(std::move(g));
            } else if (kw == "note") {
                out.notes.push_back(rest);
            } else {
                throw ParseError(ln, 1, "unknown directive '" + kw + "'");
            }
        }

        if (!have_vertices) throw ParseError(1, 1, "missing vertices line");

        std::vector<Relation<F>> rels;
        for (auto& rr : raw_rels) rels.push_back(parse_relation(rr.body, rr.line));
        out.algebra = std::make_shared<Algebra<F>>(fs_, q_, std::move(rels), length_cap);

        for (auto& rm : raw_mods)
            out.modules.push_back({rm.name, parse_module(out.algebra, rm.body, rm.line)});
        return out;
    }

  private:
    FieldSpec fs_;
    Quiver q_;
    std::vector<std::string> lines_;

    void parse_vertices(const std::string& rest, int ln) {
        if (rest.empty()) throw ParseError(ln, 1, "vertices line is empty");
        bool all_digits = rest.find(',') == std::string::npos;
        for (char c : rest)
            if (!std::isdigit((unsigned char)c)) all_digits = false;
        if (all_digits) {
            int n = std::stoi(rest);
            if (n <= 0) throw ParseError(ln, 1, "vertex count must be positive");
            for (int v = 1; v <= n; ++v) q_.vnames.push_back(std::to_string(v));
        } else {
            for (auto& name : detail::split(rest, ',')) {
                if (name.empty()) throw ParseError(ln, 1, "empty vertex name");
                for (auto& existing : q_.vnames)
                    if (existing == name) throw ParseError(ln, 1, "duplicate vertex " + name);
                q_.vnames.push_back(name);
            }
        }
    }

    void parse_arrow(const std::string& rest, int ln) {
        // <id> : <src> -> <tgt>
        auto colon = rest.find(':');
        auto arr = rest.find("->");
        if (colon == std::string::npos || arr == std::string::npos || arr < colon)
            throw ParseError(ln, 1, "malformed arrow (want: arrow <id> : <src> -> <tgt>)");
        std::string id = detail::strip(rest.substr(0, colon));
        std::string s = detail::strip(rest.substr(colon + 1, arr - colon - 1));
        std::string t = detail::strip(rest.substr(arr + 2));
        if (id.empty() || s.empty() || t.empty()) throw ParseError(ln, 1, "malformed arrow");
        if (q_.has_arrow(id)) throw ParseError(ln, 1, "duplicate arrow id " + id);
        int si, ti;
        try {
            si = q_.vertex(s);
            ti = q_.vertex(t);
        } catch (const std::out_of_range& e) {
            throw ParseError(ln, 1, e.what());
        }
        q_.arrows.push_back({id, si, ti});
    }

    Path parse_path(const std::string& s, int ln) {
        Path p;
        auto parts = detail::split(s, '.');
        for (auto& id : parts) {
            int a;
            try {
                a = q_.arrow(id);
            } catch (const std::out_of_range& e) {
                throw ParseError(ln, 1, e.what());
            }
            if (!p.arrows.empty()) {
                int prev = p.arrows.back();
                if (q_.arrows[size_t(prev)].tgt != q_.arrows[size_t(a)].src)
                    throw ParseError(ln, 1, "path " + s + " is not composable");
            } else {
                p.source = q_.arrows[size_t(a)].src;
            }
            p.arrows.push_back(a);
        }
        if (p.arrows.empty()) throw ParseError(ln, 1, "empty path");
        return p;
    }

    Relation<F> parse_relation(const std::string& body, int ln) {
        // split into signed terms
        std::vector<std::pair<int, std::string>> terms;  // sign, text
        std::string cur;
        int sign = 1;
        auto flush = [&](int next_sign) {
            cur = detail::strip(cur);
            if (cur.empty()) throw ParseError(ln, 1, "malformed relation term");
            terms.push_back({sign, cur});
            cur.clear();
            sign = next_sign;
        };
        for (size_t k = 0; k < body.size(); ++k) {
            char c = body[k];
            if ((c == '+' || c == '-') && !cur.empty() && detail::strip(cur) != "") {
                flush(c == '+' ? 1 : -1);
            } else if ((c == '+' || c == '-') && detail::strip(cur).empty() && terms.empty()) {
                sign = (c == '-') ? -sign : sign;  // leading sign
            } else {
                cur += c;
            }
        }
        flush(1);

        Relation<F> rel;
        bool first = true;
        std::map<Path, F> acc;
        for (auto& [sg, text] : terms) {
            long long coef = 1;
            std::string ptext = text;
            auto star = text.find('*');
            if (star != std::string::npos) {
                std::string ctext = detail::strip(text.substr(0, star));
                try {
                    coef = std::stoll(ctext);
                } catch (...) {
                    throw ParseError(ln, 1, "bad coefficient '" + ctext + "'");
                }
                ptext = detail::strip(text.substr(star + 1));
            }
            Path p = parse_path(ptext, ln);
            if (p.length() < 2)
                throw ParseError(ln, 1, "relation paths must have length >= 2");
            if (first) {
                rel.src = p.source;
                rel.tgt = p.target(q_);
                first = false;
            } else if (p.source != rel.src || p.target(q_) != rel.tgt) {
                throw ParseError(ln, 1, "relation mixes non-parallel paths");
            }
            F c = F::from_spec(fs_, sg * coef);
            auto it = acc.find(p);
            if (it == acc.end()) acc.emplace(p, c);
            else it->second += c;
        }
        for (auto& [p, c] : acc)
            if (!c.is_zero()) rel.terms.push_back({c, p});
        if (rel.terms.empty()) throw ParseError(ln, 1, "relation is identically zero");
        return rel;
    }

    // Finds the { ... } block starting on line i; returns (name, body, last line index).
    std::tuple<std::string, std::string, size_t> read_block(size_t i, const std::string& kw) {
        std::string agg;
        int depth = 0;
        size_t j = i;
        std::string name;
        for (; j < lines_.size(); ++j) {
            std::string l = lines_[j];
            auto hash = l.find('#');
            if (hash != std::string::npos) l = l.substr(0, hash);
            if (j == i) {
                auto brace = l.find('{');
                std::string head = detail::strip(brace == std::string::npos ? l : l.substr(0, brace));
                std::istringstream hs(head);
                std::string w;
                hs >> w;  // keyword
                if (!(hs >> name)) throw ParseError(int(i) + 1, 1, kw + " needs a name");
            }
            for (char c : l) {
                if (c == '{') ++depth;
                if (c == '}') --depth;
            }
            agg += l + "\n";
            if (depth == 0 && agg.find('{') != std::string::npos) break;
        }
        if (depth != 0) throw ParseError(int(i) + 1, 1, "unbalanced braces in " + kw + " block");
        auto b = agg.find('{');
        auto e = agg.rfind('}');
        return {name, agg.substr(b + 1, e - b - 1), j};
    }

    F parse_entry(const std::string& s, int ln) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return F::from_spec(fs_, std::stoll(s));
            return F::from_spec(fs_, std::stoll(s.substr(0, slash)),
                                std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ParseError(ln, 1, "bad matrix entry '" + s + "'");
        }
    }

    Mat<F> parse_matrix(const std::string& s, int rows, int cols, int ln) {
        // [[a,b],[c,d]]; must match the declared dimensions
        std::vector<std::vector<F>> data;
        size_t k = 0;
        auto skip = [&] { while (k < s.size() && std::isspace((unsigned char)s[k])) ++k; };
        skip();
        if (k >= s.size() || s[k] != '[') throw ParseError(ln, 1, "matrix must start with [");
        ++k;
        while (true) {
            skip();
            if (k < s.size() && s[k] == ']') { ++k; break; }
            if (k >= s.size() || s[k] != '[') throw ParseError(ln, 1, "expected [ starting a row");
            ++k;
            std::vector<F> rowv;
            std::string cur;
            while (k < s.size() && s[k] != ']') {
                if (s[k] == ',') {
                    rowv.push_back(parse_entry(detail::strip(cur), ln));
                    cur.clear();
                } else cur += s[k];
                ++k;
            }
            if (k >= s.size()) throw ParseError(ln, 1, "unterminated matrix row");
            if (!detail::strip(cur).empty()) rowv.push_back(parse_entry(detail::strip(cur), ln));
            ++k;  // ']'
            data.push_back(std::move(rowv));
            skip();
            if (k < s.size() && s[k] == ',') ++k;
        }
        skip();
        if (k != s.size()) throw ParseError(ln, 1, "trailing garbage after matrix");
        if (int(data.size()) != rows)
            throw ParseError(ln, 1, "matrix has " + std::to_string(data.size()) + " rows, want " +
                                        std::to_string(rows));
        Mat<F> m(rows, cols);
        for (int r = 0; r < rows; ++r) {
            if (int(data[size_t(r)].size()) != cols)
                throw ParseError(ln, 1, "matrix row has " + std::to_string(data[size_t(r)].size()) +
                                            " entries, want " + std::to_string(cols));
            for (int c = 0; c < cols; ++c) m(r, c) = data[size_t(r)][size_t(c)];
        }
        return m;
    }

    RepPtr<F> parse_module(const AlgPtr<F>& alg, const std::string& body, int ln) {
        std::vector<int> dim;
        std::map<std::string, std::string> maps;
        for (auto& stmt0 : detail::split(body, ';')) {
            std::string stmt = detail::strip(stmt0);
            if (stmt.empty()) continue;
            auto eq = stmt.find('=');
            if (eq == std::string::npos) throw ParseError(ln, 1, "malformed module statement");
            std::string lhs = detail::strip(stmt.substr(0, eq));
            std::string rhs = detail::strip(stmt.substr(eq + 1));
            if (lhs == "dim") {
                if (rhs.size() < 2 || rhs.front() != '[' || rhs.back() != ']')
                    throw ParseError(ln, 1, "dim must be a [..] list");
                for (auto& d : detail::split(rhs.substr(1, rhs.size() - 2), ','))
                    dim.push_back(std::stoi(d));
                if (int(dim.size()) != alg->quiver().nv())
                    throw ParseError(ln, 1, "dim list length differs from vertex count");
            } else if (lhs.rfind("map ", 0) == 0) {
                maps[detail::strip(lhs.substr(4))] = rhs;
            } else {
                throw ParseError(ln, 1, "unknown module statement '" + lhs + "'");
            }
        }
        if (dim.empty()) throw ParseError(ln, 1, "module lacks a dim list");
        const Quiver& q = alg->quiver();
        std::vector<Mat<F>> mat;
        for (int a = 0; a < q.na(); ++a) {
            int r = dim[size_t(q.arrows[size_t(a)].tgt)];
            int c = dim[size_t(q.arrows[size_t(a)].src)];
            auto it = maps.find(q.arrows[size_t(a)].id);
            if (it == maps.end()) mat.emplace_back(r, c);
            else mat.push_back(parse_matrix(it->second, r, c, ln));
        }
        for (auto& [id, s] : maps)
            if (!q.has_arrow(id)) throw ParseError(ln, 1, "module maps unknown arrow " + id);
        return checked(make_rep(alg, dim, std::move(mat)));
    }
};

template <Field F>
AlgebraFile<F> parse_algebra_file(const std::string& text,
                                  int length_cap = Algebra<F>::kDefaultLengthCap) {
    AlgebraParser<F> p;
    return p.parse(text, length_cap);
}

template <Field F>
AlgPtr<F> parse_algebra(const std::string& text,
                        int length_cap = Algebra<F>::kDefaultLengthCap) {
    return parse_algebra_file<F>(text, length_cap).algebra;
}

// ---------------------------------------------------------------------------
// Canonical pretty-printer (byte-stable fixed point of print . parse)

template <Field F>
std::string print_matrix(const Mat<F>& m) {
    std::string s = "[";
    for (int r = 0; r < m.rows(); ++r) {
        if (r) s += ",";
        s += "[";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) s += ",";
            s += m(r, c).str();
        }
        s += "]";
    }
    return s + "]";
}

template <Field F>
std::string print_module(const AlgPtr<F>& alg, const std::string& name, const Rep<F>& m) {
    const Quiver& q = alg->quiver();
    std::string s = "module " + name + " { dim = [";
    for (int v = 0; v < q.nv(); ++v) {
        if (v) s += ",";
        s += std::to_string(m.dim[size_t(v)]);
    }
    s += "];";
    std::vector<int> order(size_t(q.na()));
    for (int a = 0; a < q.na(); ++a) order[size_t(a)] = a;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return q.arrows[size_t(x)].id < q.arrows[size_t(y)].id; });
    for (int a : order)
        if (!m.mat[size_t(a)].is_zero())
            s += " map " + q.arrows[size_t(a)].id + " = " + print_matrix(m.mat[size_t(a)]) + ";";
    return s + " }";
}

template <Field F>
std::string pretty_print(const AlgebraFile<F>& file) {
    const auto& alg = *file.algebra;
    const Quiver& q = alg.quiver();
    std::ostringstream out;
    out << "field " << alg.field().str() << "\n";

    bool numeric = true;
    for (int v = 0; v < q.nv(); ++v)
        if (q.vnames[size_t(v)] != std::to_string(v + 1)) numeric = false;
    if (numeric) out << "vertices " << q.nv() << "\n";
    else {
        out << "vertices ";
        for (int v = 0; v < q.nv(); ++v) out << (v ? "," : "") << q.vnames[size_t(v)];
        out << "\n";
    }

    std::vector<int> order(size_t(q.na()));
    for (int a = 0; a < q.na(); ++a) order[size_t(a)] = a;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return q.arrows[size_t(x)].id < q.arrows[size_t(y)].id; });
    for (int a : order)
        out << "arrow " << q.arrows[size_t(a)].id << " : " << q.vnames[size_t(q.arrows[size_t(a)].src)]
            << " -> " << q.vnames[size_t(q.arrows[size_t(a)].tgt)] << "\n";

    for (const auto& rel : alg.relations()) {
        auto terms = rel.terms;
        std::sort(terms.begin(), terms.end(), [&](auto& x, auto& y) {
            return alg.order().less(x.second, y.second);
        });
        out << "relation ";
        for (size_t t = 0; t < terms.size(); ++t) {
            std::string c = terms[t].first.str();
            bool neg = !c.empty() && c[0] == '-';
            if (t == 0) out << (neg ? "-" : "");
            else out << (neg ? " - " : " + ");
            out << (neg ? c.substr(1) : c) << "*" << terms[t].second.str(q);
        }
        out << "\n";
    }

    for (auto& [name, m] : file.modules) out << print_module(file.algebra, name, *m) << "\n";
    for (auto& g : file.golden) {
        out << "golden " << g.key;
        for (auto& a : g.args) out << " " << a;
        out << "  # " << g.provenance << "\n";
    }
    for (auto& n : file.notes) out << "note " << n << "\n";
    return out.str();
}

}  // namespace extdim
