#include "tautilt/pool.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "tautilt/errors.hpp"

namespace tautilt {

std::string dim_to_string(const DimVector& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    return os.str();
}

int IndecPool::index_of(const DimVector& d) const {
    for (int i = 0; i < size(); ++i)
        if (modules[i].dim == d) return i;
    return -1;
}

int IndecPool::tau_index(int i) const {
    const IndecModule& m = modules[i];
    if (m.component == Component::Preprojective) {
        if (m.orbit_level == 0) return -2;  // projective, killed
        for (int j = 0; j < size(); ++j)
            if (modules[j].component == Component::Preprojective && modules[j].orbit_vertex == m.orbit_vertex &&
                modules[j].orbit_level == m.orbit_level - 1)
                return j;
        return -1;
    }
    for (int j = 0; j < size(); ++j)
        if (modules[j].component == Component::Preinjective && modules[j].orbit_vertex == m.orbit_vertex &&
            modules[j].orbit_level == m.orbit_level + 1)
            return j;
    return -1;
}

int IndecPool::tau_inverse_index(int i) const {
    const IndecModule& m = modules[i];
    if (m.component == Component::Preinjective) {
        if (m.orbit_level == 0) return -2;  // injective, killed
        for (int j = 0; j < size(); ++j)
            if (modules[j].component == Component::Preinjective && modules[j].orbit_vertex == m.orbit_vertex &&
                modules[j].orbit_level == m.orbit_level - 1)
                return j;
        return -1;
    }
    if (m.is_injective) return -2;
    for (int j = 0; j < size(); ++j)
        if (modules[j].component == Component::Preprojective && modules[j].orbit_vertex == m.orbit_vertex &&
            modules[j].orbit_level == m.orbit_level + 1)
            return j;
    return -1;
}

std::string IndecPool::describe(int i) const { return "(" + dim_to_string(modules[i].dim) + ")"; }

namespace {

struct OrbitDesc {
    Component comp;
    int v;
    int level;
    bool operator<(const OrbitDesc& o) const {
        return std::tie(comp, v, level) < std::tie(o.comp, o.v, o.level);
    }
};

// Dimension-vector oracle for orbit members, extending past a bounded pool by
// Coxeter arithmetic (valid while the component continues, which it does for
// the infinite-type presets).
class OrbitDims {
  public:
    OrbitDims(const Quiver& q, const IntMatrix& phi, const IntMatrix& phi_inv) : q_(q), phi_(phi), phi_inv_(phi_inv) {}

    const DimVector& get(const OrbitDesc& d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        DimVector val;
        if (d.level == 0) {
            val = d.comp == Component::Preprojective ? dim_projective(q_, d.v) : dim_injective(q_, d.v);
        } else {
            const DimVector& prev = get(OrbitDesc{d.comp, d.v, d.level - 1});
            val = d.comp == Component::Preprojective ? phi_inv_.apply(prev) : phi_.apply(prev);
        }
        for (long long x : val)
            if (x < 0) throw InternalError("orbit dimension left the positive cone");
        return cache_.emplace(d, std::move(val)).first->second;
    }

  private:
    const Quiver& q_;
    IntMatrix phi_, phi_inv_;
    std::map<OrbitDesc, DimVector> cache_;
};

// Hom dimension between orbit members by shifting along the translate until
// one side is projective or injective; see the per-case comments.
class OrbitHom {
  public:
    OrbitHom(OrbitDims& dims, std::vector<int> preproj_len, std::vector<int> endpoint_inj_vertex)
        : dims_(dims), len_(std::move(preproj_len)), end_inj_(std::move(endpoint_inj_vertex)) {}

    bool preproj_injective(const OrbitDesc& d) const { return len_[d.v] >= 0 && d.level == len_[d.v] - 1; }

    long long hom(const OrbitDesc& a, const OrbitDesc& b) {
        if (a.comp == Component::Preinjective && b.comp == Component::Preprojective) return 0;
        if (a.comp == Component::Preprojective && b.comp == Component::Preprojective) return hom_pp(a, b);
        if (a.comp == Component::Preinjective && b.comp == Component::Preinjective) return hom_ii(a, b);
        return hom_pi(a, b);
    }

  private:
    long long hom_pp(const OrbitDesc& a, const OrbitDesc& b) {
        // Hom into an injective is the dimension at its socle vertex.
        if (preproj_injective(b)) return dims_.get(a)[end_inj_[b.v]];
        // Maps out of an injective into a non-injective indecomposable vanish.
        if (preproj_injective(a)) return 0;
        // Hom(P_v, X) = dim X_v.
        if (a.level == 0) return dims_.get(b)[a.v];
        // Hom from a non-projective into a projective vanishes (hereditary).
        if (b.level == 0) return 0;
        return hom_pp(OrbitDesc{a.comp, a.v, a.level - 1}, OrbitDesc{b.comp, b.v, b.level - 1});
    }

    long long hom_ii(const OrbitDesc& a, const OrbitDesc& b) {
        // Hom(X, I_w) = dim X_w.
        if (b.level == 0) return dims_.get(a)[b.v];
        // Injective into non-injective vanishes.
        if (a.level == 0) return 0;
        return hom_ii(OrbitDesc{a.comp, a.v, a.level - 1}, OrbitDesc{b.comp, b.v, b.level - 1});
    }

    long long hom_pi(const OrbitDesc& a, const OrbitDesc& b) {
        if (a.level == 0) return dims_.get(b)[a.v];
        if (b.level == 0) return dims_.get(a)[b.v];
        if (preproj_injective(a)) return 0;
        // Apply tau to both sides: preprojective level drops, preinjective rises.
        return hom_pi(OrbitDesc{a.comp, a.v, a.level - 1}, OrbitDesc{b.comp, b.v, b.level + 1});
    }

    OrbitDims& dims_;
    std::vector<int> len_;
    std::vector<int> end_inj_;
};

void run_parallel(int jobs, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || jobs <= 1) {
        for (int i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < std::min(workers, jobs); ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

IndecPool enumerate_indecomposables(QuiverPtr q, int depth, int workers) {
    IndecPool pool;
    pool.quiver = q;
    pool.phi = coxeter_matrix(*q);
    pool.phi_inv = coxeter_inverse(*q);
    const int n = q->vertex_count();

    auto dynkin = classify_dynkin(*q);
    bool bounded_preset = false;
    if (!dynkin) {
        const std::string& name = q->name();
        bool kronecker_like = n == 2 && q->arrow_count() >= 2;
        if (kronecker_like) {
            int s = q->arrows().front().src, t = q->arrows().front().dst;
            for (const auto& a : q->arrows())
                if (a.src != s || a.dst != t) kronecker_like = false;
        }
        if (kronecker_like || name == "W4") {
            bounded_preset = true;
            if (depth < 1)
                throw UsageError("representation-infinite preset needs a tau-orbit depth bound (--depth)");
        } else {
            throw PoolError(
                "indecomposable enumeration supports representation-finite quivers and the "
                "Kronecker-type presets (K2, W2m, W4) only");
        }
    }
    pool.exhaustive = static_cast<bool>(dynkin);
    pool.depth = bounded_preset ? depth : 0;
    pool.preproj_orbit_len.assign(n, -1);

    const std::vector<int>& sigma = q->sink_first_order();

    // Preprojective tau^- orbits from the projectives.
    std::vector<IndecModule> preproj, preinj;
    for (int v = 0; v < n; ++v) {
        Representation x = projective_rep(q, v);
        int level = 0;
        while (true) {
            IndecModule m;
            m.dim = x.dims;
            m.rep = x;
            m.component = Component::Preprojective;
            m.orbit_vertex = v;
            m.orbit_level = level;
            m.is_projective = level == 0;
            preproj.push_back(std::move(m));
            if (bounded_preset && level + 1 >= depth) break;
            if (level > 4 * n * n + 16) throw InternalError("tau^- orbit failed to terminate");
            Representation next = tau_inverse(x);
            if (next.is_zero()) {
                preproj.back().is_injective = true;
                pool.preproj_orbit_len[v] = level + 1;
                break;
            }
            // Coxeter conformance at every orbit step.
            if (next.dims != pool.phi_inv.apply(x.dims))
                throw InternalError("tau^- orbit dims disagree with Coxeter arithmetic");
            x = std::move(next);
            ++level;
        }
        if (bounded_preset && pool.preproj_orbit_len[v] >= 0)
            throw InternalError("preprojective orbit terminated on an infinite-type preset");
    }

    if (bounded_preset) {
        for (int v = 0; v < n; ++v) {
            Representation x = injective_rep(q, v);
            for (int level = 0; level < depth; ++level) {
                IndecModule m;
                m.dim = x.dims;
                m.rep = x;
                m.component = Component::Preinjective;
                m.orbit_vertex = v;
                m.orbit_level = level;
                m.is_injective = level == 0;
                m.injective_vertex = level == 0 ? v : -1;
                preinj.push_back(std::move(m));
                if (level + 1 < depth) {
                    Representation next = tau(x);
                    if (next.is_zero()) throw InternalError("preinjective orbit died on an infinite-type preset");
                    if (next.dims != pool.phi.apply(x.dims))
                        throw InternalError("tau orbit dims disagree with Coxeter arithmetic");
                    x = std::move(next);
                }
            }
        }
    } else {
        // Identify the injective endpoint of each finite orbit.
        std::vector<DimVector> inj_dims;
        for (int v = 0; v < n; ++v) inj_dims.push_back(dim_injective(*q, v));
        int found = 0;
        for (auto& m : preproj) {
            if (!m.is_injective) continue;
            for (int v = 0; v < n; ++v)
                if (m.dim == inj_dims[v]) {
                    m.injective_vertex = v;
                    ++found;
                    break;
                }
            if (m.injective_vertex < 0) throw InternalError("orbit endpoint is not an injective");
        }
        if (found != n) throw InternalError("injective census mismatch");
    }

    // Canonical order: preprojectives by (level, sink-first vertex), then
    // preinjectives by (reverse level, sink-first vertex).
    std::stable_sort(preproj.begin(), preproj.end(), [&](const IndecModule& a, const IndecModule& b) {
        return std::make_pair(a.orbit_level, sigma[a.orbit_vertex]) <
               std::make_pair(b.orbit_level, sigma[b.orbit_vertex]);
    });
    std::stable_sort(preinj.begin(), preinj.end(), [&](const IndecModule& a, const IndecModule& b) {
        return std::make_pair(-a.orbit_level, sigma[a.orbit_vertex]) <
               std::make_pair(-b.orbit_level, sigma[b.orbit_vertex]);
    });
    pool.modules = std::move(preproj);
    for (auto& m : preinj) pool.modules.push_back(std::move(m));
    for (auto& m : pool.modules) m.label = dim_to_string(m.dim);

    // Distinct canonical ids.
    {
        std::set<DimVector> seen;
        for (const auto& m : pool.modules)
            if (!seen.insert(m.dim).second) throw InternalError("duplicate dimension vector in pool");
    }
    if (pool.exhaustive) {
        auto roots = positive_roots_of(*q);
        if (static_cast<int>(roots.size()) != pool.size())
            throw InternalError("pool size disagrees with the positive-root count");
        std::set<DimVector> root_set(roots.begin(), roots.end());
        for (const auto& m : pool.modules)
            if (!root_set.count(m.dim)) throw InternalError("pool member is not a positive root");
    }

    // Hom / Ext / Hom(-, tau -) dimension tables via orbit shifts.
    const int sz = pool.size();
    std::vector<int> end_inj(n, -1);
    for (const auto& m : pool.modules)
        if (m.component == Component::Preprojective && m.is_injective) end_inj[m.orbit_vertex] = m.injective_vertex;
    OrbitDims odims(*q, pool.phi, pool.phi_inv);
    OrbitHom ohom(odims, pool.preproj_orbit_len, end_inj);
    auto desc = [&](int i) {
        const IndecModule& m = pool.modules[i];
        return OrbitDesc{m.component, m.orbit_vertex, m.orbit_level};
    };
    pool.hom.assign(sz, std::vector<long long>(sz, 0));
    pool.ext.assign(sz, std::vector<long long>(sz, 0));
    pool.hom_tau.assign(sz, std::vector<long long>(sz, 0));
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            pool.hom[i][j] = ohom.hom(desc(i), desc(j));
            pool.ext[i][j] = pool.hom[i][j] - euler_form(*q, pool.modules[i].dim, pool.modules[j].dim);
            OrbitDesc dj = desc(j);
            if (dj.comp == Component::Preprojective) {
                if (dj.level == 0)
                    pool.hom_tau[i][j] = 0;  // tau kills projectives
                else
                    pool.hom_tau[i][j] = ohom.hom(desc(i), OrbitDesc{dj.comp, dj.v, dj.level - 1});
            } else {
                pool.hom_tau[i][j] = ohom.hom(desc(i), OrbitDesc{dj.comp, dj.v, dj.level + 1});
            }
        }

    // Structural sanity: unitriangular Hom under the pool order, one-dimensional
    // endomorphism rings (checked honestly), self tau-rigidity, AR duality.
    for (int i = 0; i < sz; ++i) {
        if (pool.hom[i][i] != 1) throw InternalError("pool order: End table entry not 1");
        if (pool.hom_tau[i][i] != 0) throw InternalError("pool member is not tau-rigid");
        if (pool.ext[i][i] != 0) throw InternalError("pool member has self-extensions");
        for (int j = 0; j < i; ++j)
            if (pool.hom[i][j] != 0) throw InternalError("pool order is not Hom-unitriangular");
    }
    {
        std::vector<long long> end_dims(sz, 0);
        run_parallel(sz, workers, [&](int i) { end_dims[i] = hom_dim(pool.modules[i].rep, pool.modules[i].rep); });
        for (int i = 0; i < sz; ++i)
            if (end_dims[i] != 1) throw InternalError("pool member " + pool.describe(i) + " is not exceptional");
    }
    return pool;
}

std::vector<std::pair<int, int>> decompose(const Representation& m, const IndecPool& pool) {
    const int sz = pool.size();
    std::vector<long long> h(sz, 0);
    for (int i = 0; i < sz; ++i) h[i] = hom_dim(pool.modules[i].rep, m);
    std::vector<long long> mult(sz, 0);
    for (int i = sz - 1; i >= 0; --i) {
        long long acc = h[i];
        for (int j = i + 1; j < sz; ++j) acc -= pool.hom[i][j] * mult[j];
        mult[i] = acc;  // hom[i][i] == 1
        if (mult[i] < 0) throw PoolError("module has summands outside the supported pool");
    }
    DimVector total(m.dims.size(), 0);
    for (int i = 0; i < sz; ++i)
        for (std::size_t v = 0; v < total.size(); ++v) total[v] += mult[i] * pool.modules[i].dim[v];
    if (total != m.dims) throw PoolError("module has summands outside the supported pool");
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < sz; ++i)
        if (mult[i] > 0) out.push_back({i, static_cast<int>(mult[i])});
    return out;
}

Representation direct_sum_of(const IndecPool& pool, const std::vector<std::pair<int, int>>& multiset) {
    std::vector<Representation> parts;
    for (auto [idx, mult] : multiset)
        for (int c = 0; c < mult; ++c) parts.push_back(pool.modules[idx].rep);
    return parts.empty() ? zero_rep(pool.quiver) : direct_sum(parts);
}

Representation direct_sum_of(const IndecPool& pool, const std::vector<int>& indices) {
    std::vector<std::pair<int, int>> ms;
    for (int i : indices) ms.push_back({i, 1});
    return direct_sum_of(pool, ms);
}

}  // namespace tautilt
