#include "tautilt/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "tautilt/errors.hpp"

namespace tautilt {

Quiver::Quiver(std::string name, std::vector<std::string> vertex_ids, std::vector<Arrow> arrows)
    : name_(std::move(name)), vertex_ids_(std::move(vertex_ids)), arrows_(std::move(arrows)) {
    validate_and_index();
}

int Quiver::vertex_index(const std::string& id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertex_ids_[i] == id) return i;
    throw QuiverError("unknown vertex id: " + id);
}

void Quiver::validate_and_index() {
    const int n = vertex_count();
    {
        std::set<std::string> seen;
        for (const auto& id : vertex_ids_)
            if (!seen.insert(id).second) throw QuiverError("duplicate vertex id: " + id);
    }
    {
        std::set<std::string> seen;
        for (const auto& a : arrows_) {
            if (!seen.insert(a.label).second) throw QuiverError("duplicate arrow label: " + a.label);
            if (a.src < 0 || a.src >= n || a.dst < 0 || a.dst >= n)
                throw QuiverError("arrow endpoint out of range: " + a.label);
            if (a.src == a.dst) throw QuiverError("loop arrow forbidden: " + a.label);
        }
    }

    // Cycle check with witness: DFS with colors, recover the cycle on failure.
    std::vector<std::vector<int>> out(n);
    for (int i = 0; i < static_cast<int>(arrows_.size()); ++i) out[arrows_[i].src].push_back(arrows_[i].dst);
    std::vector<int> color(n, 0), parent(n, -1);
    std::function<void(int)> dfs = [&](int v) {
        color[v] = 1;
        for (int w : out[v]) {
            if (color[w] == 0) {
                parent[w] = v;
                dfs(w);
            } else if (color[w] == 1) {
                std::ostringstream os;
                std::vector<std::string> cyc{vertex_ids_[w]};
                for (int x = v; x != w; x = parent[x]) cyc.push_back(vertex_ids_[x]);
                cyc.push_back(vertex_ids_[w]);
                std::reverse(cyc.begin() + 1, cyc.end() - 1);
                os << "cycle detected: ";
                for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " -> " : "") << cyc[i];
                throw QuiverError(os.str());
            }
        }
        color[v] = 2;
    };
    for (int v = 0; v < n; ++v)
        if (color[v] == 0) dfs(v);

    // Sink-first topological order: repeatedly remove vertices with no
    // remaining outgoing arrows, lowest declaration index first.
    sink_first_order_.assign(n, -1);
    std::vector<int> outdeg(n, 0);
    std::vector<std::vector<int>> in(n);
    for (const auto& a : arrows_) {
        ++outdeg[a.src];
        in[a.dst].push_back(a.src);
    }
    std::set<int> ready;
    for (int v = 0; v < n; ++v)
        if (outdeg[v] == 0) ready.insert(v);
    int pos = 0;
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        sink_first_order_[v] = pos++;
        for (int u : in[v])
            if (--outdeg[u] == 0) ready.insert(u);
    }

    // Path lists per source, trivial path first, then DFS extension order.
    paths_from_.assign(n, {});
    std::vector<std::vector<int>> out_arrows(n);
    for (int i = 0; i < static_cast<int>(arrows_.size()); ++i) out_arrows[arrows_[i].src].push_back(i);
    for (int v = 0; v < n; ++v) {
        std::vector<int> cur;
        std::function<void(int)> walk = [&](int at) {
            paths_from_[v].push_back(Path{v, at, cur});
            for (int ai : out_arrows[at]) {
                cur.push_back(ai);
                walk(arrows_[ai].dst);
                cur.pop_back();
            }
        };
        walk(v);
    }
}

std::vector<Path> Quiver::all_paths() const {
    std::vector<Path> out;
    for (int v = 0; v < vertex_count(); ++v)
        for (const auto& p : paths_from_[v]) out.push_back(p);
    return out;
}

std::vector<Path> Quiver::paths_between(int src, int dst) const {
    std::vector<Path> out;
    for (const auto& p : paths_from_[src])
        if (p.dst == dst) out.push_back(p);
    return out;
}

Quiver Quiver::opposite() const {
    std::vector<Arrow> rev;
    rev.reserve(arrows_.size());
    for (const auto& a : arrows_) rev.push_back(Arrow{a.label, a.dst, a.src});
    return Quiver(name_ + "_op", vertex_ids_, rev);
}

// ---------------------------------------------------------------------------
// DSL: lines `quiver <name>`, `vertex <id>+`, `arrow <label> <src> <dst>`,
// `#` comments. Explicit arrows only, no inference.

Quiver Quiver::parse(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::string name;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::map<std::string, int> vindex;
    bool saw_quiver = false;

    auto is_ident = [](const std::string& s) {
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
        return true;
    };

    while (std::getline(is, line)) {
        ++lineno;
        // Support `/`-separated one-line sources as well as newline-separated.
        std::vector<std::string> segments;
        {
            std::string cur;
            for (char ch : line) {
                if (ch == '/') {
                    segments.push_back(cur);
                    cur.clear();
                } else
                    cur.push_back(ch);
            }
            segments.push_back(cur);
        }
        for (const std::string& seg : segments) {
            std::istringstream ls(seg);
            std::string tok;
            if (!(ls >> tok)) continue;
            if (tok[0] == '#') continue;
            if (tok == "quiver") {
                if (!(ls >> name) || !is_ident(name)) throw SyntaxError(lineno, "expected quiver name");
                saw_quiver = true;
            } else if (tok == "vertex") {
                std::string id;
                bool any = false;
                while (ls >> id) {
                    if (!is_ident(id)) throw SyntaxError(lineno, "bad vertex id: " + id);
                    if (vindex.count(id)) throw SyntaxError(lineno, "duplicate vertex id: " + id);
                    vindex[id] = static_cast<int>(vertices.size());
                    vertices.push_back(id);
                    any = true;
                }
                if (!any) throw SyntaxError(lineno, "vertex line needs at least one id");
            } else if (tok == "arrow") {
                std::string label, src, dst, extra;
                if (!(ls >> label >> src >> dst)) throw SyntaxError(lineno, "expected: arrow <label> <src> <dst>");
                if (ls >> extra) throw SyntaxError(lineno, "trailing tokens after arrow");
                if (!is_ident(label)) throw SyntaxError(lineno, "bad arrow label: " + label);
                if (!vindex.count(src)) throw SyntaxError(lineno, "unknown source vertex: " + src);
                if (!vindex.count(dst)) throw SyntaxError(lineno, "unknown target vertex: " + dst);
                arrows.push_back(Arrow{label, vindex[src], vindex[dst]});
            } else {
                throw SyntaxError(lineno, "unknown directive: " + tok);
            }
        }
    }
    if (!saw_quiver) throw SyntaxError(lineno ? lineno : 1, "missing `quiver <name>` line");
    if (vertices.empty()) throw SyntaxError(lineno, "quiver has no vertices");
    return Quiver(name, vertices, arrows);
}

// ---------------------------------------------------------------------------
// Presets.

namespace {

std::vector<std::string> numbered(int n) {
    std::vector<std::string> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(std::to_string(i));
    return ids;
}

Quiver linear_a(int n) {
    // 1 <- 2 <- ... <- n
    std::vector<Arrow> arrows;
    for (int i = 2; i <= n; ++i) arrows.push_back(Arrow{"a" + std::to_string(i - 1), i - 1, i - 2});
    return Quiver("A" + std::to_string(n), numbered(n), arrows);
}

Quiver fork_d(int n) {
    // chain 1 <- 2 <- ... <- n-2 with vertices n-1 and n attached to n-2.
    std::vector<Arrow> arrows;
    for (int i = 2; i <= n - 2; ++i) arrows.push_back(Arrow{"a" + std::to_string(i - 1), i - 1, i - 2});
    arrows.push_back(Arrow{"f1", n - 2, n - 3});
    arrows.push_back(Arrow{"f2", n - 1, n - 3});
    return Quiver("D" + std::to_string(n), numbered(n), arrows);
}

Quiver branched_e(int n) {
    // chain 1 <- 2 <- ... <- (n-1) with vertex n attached to vertex 3.
    std::vector<Arrow> arrows;
    for (int i = 2; i <= n - 1; ++i) arrows.push_back(Arrow{"a" + std::to_string(i - 1), i - 1, i - 2});
    arrows.push_back(Arrow{"b", n - 1, 2});
    return Quiver("E" + std::to_string(n), numbered(n), arrows);
}

Quiver kronecker(int m, const std::string& name) {
    std::vector<Arrow> arrows;
    for (int i = 0; i < m; ++i) arrows.push_back(Arrow{std::string(1, static_cast<char>('a' + i)), 1, 0});
    return Quiver(name, numbered(2), arrows);
}

}  // namespace

Quiver Quiver::preset(const std::string& name) {
    if (name.size() == 2 && name[0] == 'A' && name[1] >= '2' && name[1] <= '8') return linear_a(name[1] - '0');
    if (name.size() == 2 && name[0] == 'D' && name[1] >= '4' && name[1] <= '6') return fork_d(name[1] - '0');
    if (name.size() == 2 && name[0] == 'E' && name[1] >= '6' && name[1] <= '8') return branched_e(name[1] - '0');
    if (name == "K2") return kronecker(2, "K2");
    if (name == "W4")
        return Quiver("W4", numbered(4),
                      {Arrow{"a", 1, 0}, Arrow{"b", 1, 0}, Arrow{"c", 2, 1}, Arrow{"d", 2, 3}});
    if (name.size() >= 3 && name.rfind("W2", 0) == 0) {
        int m = 0;
        try {
            m = std::stoi(name.substr(2));
        } catch (...) {
            throw UsageError("unknown preset: " + name);
        }
        if (m < 3 || m > 9) throw UsageError("W2m preset needs 3 <= m <= 9, got " + name);
        return kronecker(m, name);
    }
    throw UsageError("unknown preset: " + name);
}

std::vector<std::string> Quiver::preset_names() {
    std::vector<std::string> names;
    for (int i = 2; i <= 8; ++i) names.push_back("A" + std::to_string(i));
    for (int i = 4; i <= 6; ++i) names.push_back("D" + std::to_string(i));
    for (int i = 6; i <= 8; ++i) names.push_back("E" + std::to_string(i));
    names.push_back("K2");
    names.push_back("W4");
    names.push_back("W23");
    return names;
}

// ---------------------------------------------------------------------------
// Integral invariants.

DimVector IntMatrix::apply(const DimVector& v) const {
    DimVector out(n, 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[r] += at(r, c) * v[c];
    return out;
}

RatMatrix IntMatrix::to_rational() const {
    RatMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m.at(r, c) = at(r, c);
    return m;
}

DimVector dim_projective(const Quiver& q, int v) {
    DimVector d(q.vertex_count(), 0);
    for (const auto& p : q.paths_from(v)) ++d[p.dst];
    return d;
}

DimVector dim_injective(const Quiver& q, int v) {
    DimVector d(q.vertex_count(), 0);
    for (int s = 0; s < q.vertex_count(); ++s)
        for (const auto& p : q.paths_from(s))
            if (p.dst == v) ++d[s];
    return d;
}

IntMatrix cartan_matrix(const Quiver& q) {
    const int n = q.vertex_count();
    IntMatrix c(n);
    for (int i = 0; i < n; ++i) {
        DimVector d = dim_projective(q, i);
        for (int j = 0; j < n; ++j) c.at(i, j) = d[j];
    }
    return c;
}

namespace {

IntMatrix rational_to_integral(const RatMatrix& m) {
    IntMatrix out(static_cast<int>(m.rows()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rat& x = m.at(r, c);
            if (x.get_den() != 1) throw InternalError("expected integral matrix entry");
            if (!x.get_num().fits_slong_p()) throw InternalError("matrix entry overflows long");
            out.at(static_cast<int>(r), static_cast<int>(c)) = x.get_num().get_si();
        }
    return out;
}

}  // namespace

IntMatrix coxeter_matrix(const Quiver& q) {
    // Phi = -C' * C^{-1} where C has columns dim P_i and C' columns dim I_i;
    // this is the unique matrix with Phi * dim P_i = -dim I_i.
    const int n = q.vertex_count();
    RatMatrix c(n, n), ci(n, n);
    for (int i = 0; i < n; ++i) {
        DimVector dp = dim_projective(q, i);
        DimVector di = dim_injective(q, i);
        for (int j = 0; j < n; ++j) {
            c.at(j, i) = dp[j];
            ci.at(j, i) = di[j];
        }
    }
    return rational_to_integral((ci * c.inverse()).scaled(-1));
}

IntMatrix coxeter_inverse(const Quiver& q) {
    return rational_to_integral(coxeter_matrix(q).to_rational().inverse());
}

long long euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
    if (static_cast<int>(d.size()) != q.vertex_count() || static_cast<int>(e.size()) != q.vertex_count())
        throw UsageError("euler_form: dimension vector size mismatch");
    long long acc = 0;
    for (int i = 0; i < q.vertex_count(); ++i) acc += d[i] * e[i];
    for (const auto& a : q.arrows()) acc -= d[a.src] * e[a.dst];
    return acc;
}

// ---------------------------------------------------------------------------
// Dynkin classification and positive roots.

std::string DynkinClass::to_string() const {
    const char* t = type == DynkinType::A ? "A" : type == DynkinType::D ? "D" : "E";
    return t + std::to_string(rank);
}

std::optional<DynkinClass> classify_dynkin(const Quiver& q) {
    const int n = q.vertex_count();
    if (n < 1) return std::nullopt;
    // Underlying graph must be a simple connected tree.
    std::set<std::pair<int, int>> edges;
    for (const auto& a : q.arrows()) {
        auto e = std::minmax(a.src, a.dst);
        if (!edges.insert({e.first, e.second}).second) return std::nullopt;  // parallel edge
    }
    if (static_cast<int>(edges.size()) != n - 1) return std::nullopt;
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != n) return std::nullopt;

    std::vector<int> branch;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() > 3) return std::nullopt;
        if (adj[v].size() == 3) branch.push_back(v);
    }
    if (branch.empty()) return DynkinClass{DynkinType::A, n};
    if (branch.size() > 1) return std::nullopt;

    // Arm lengths from the unique branch vertex.
    int b = branch[0];
    std::vector<int> arms;
    for (int w0 : adj[b]) {
        int len = 1, prev = b, v = w0;
        while (adj[v].size() == 2) {
            int next = adj[v][0] == prev ? adj[v][1] : adj[v][0];
            prev = v;
            v = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] != 1) return std::nullopt;
    if (arms[1] == 1) return DynkinClass{DynkinType::D, n};
    if (arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return DynkinClass{DynkinType::E, n};
    return std::nullopt;
}

std::vector<DimVector> positive_roots_of(const Quiver& q) {
    auto cls = classify_dynkin(q);
    if (!cls) throw UsageError("positive roots require a Dynkin quiver");
    const int n = q.vertex_count();
    // Undirected adjacency multiplicities.
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& a : q.arrows()) {
        ++m[a.src][a.dst];
        ++m[a.dst][a.src];
    }
    std::set<DimVector> roots;
    std::vector<DimVector> queue;
    for (int i = 0; i < n; ++i) {
        DimVector e(n, 0);
        e[i] = 1;
        roots.insert(e);
        queue.push_back(e);
    }
    // Closure under simple reflections, keeping positive vectors only.
    while (!queue.empty()) {
        DimVector d = queue.back();
        queue.pop_back();
        for (int i = 0; i < n; ++i) {
            DimVector r = d;
            long long s = 0;
            for (int j = 0; j < n; ++j) s += m[i][j] * d[j];
            r[i] = -d[i] + s;
            bool pos = true;
            for (long long x : r)
                if (x < 0) pos = false;
            if (pos && roots.insert(r).second) queue.push_back(r);
        }
        if (static_cast<long long>(roots.size()) > 4 * expected_root_count(cls->type, cls->rank))
            throw InternalError("root closure diverged");
    }
    return std::vector<DimVector>(roots.begin(), roots.end());
}

std::vector<DimVector> positive_roots(DynkinType type, int rank) {
    std::string name;
    switch (type) {
        case DynkinType::A:
            if (rank < 1) throw UsageError("A_n needs n >= 1");
            if (rank == 1) return {DimVector{1}};
            name = "A" + std::to_string(rank);
            if (rank > 8) return positive_roots_of(linear_a(rank));
            break;
        case DynkinType::D:
            if (rank < 4) throw UsageError("D_n needs n >= 4");
            return positive_roots_of(fork_d(rank));
        case DynkinType::E:
            if (rank < 6 || rank > 8) throw UsageError("E_n needs 6 <= n <= 8");
            return positive_roots_of(branched_e(rank));
    }
    return positive_roots_of(Quiver::preset(name));
}

long long expected_root_count(DynkinType type, int rank) {
    switch (type) {
        case DynkinType::A: return static_cast<long long>(rank) * (rank + 1) / 2;
        case DynkinType::D: return static_cast<long long>(rank) * (rank - 1);
        case DynkinType::E: return rank == 6 ? 36 : rank == 7 ? 63 : 120;
    }
    return 0;
}

}  // namespace tautilt
