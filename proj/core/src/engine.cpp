#include "tautilt/engine.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "tautilt/errors.hpp"

namespace tautilt {

int Bits::count() const {
    int c = 0;
    for (std::uint64_t x : w) c += __builtin_popcountll(x);
    return c;
}

Bits Bits::all(int nbits) {
    Bits b(nbits);
    for (int i = 0; i < nbits; ++i) b.set(i);
    return b;
}

bool Pair::operator<(const Pair& o) const {
    return std::tie(modules, support) < std::tie(o.modules, o.support);
}

int MutationQuiver::index_of(const Pair& p) const {
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        if (vertices[i] == p) return i;
    return -1;
}

std::vector<std::vector<int>> MutationQuiver::out_adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    return adj;
}

std::vector<std::vector<int>> MutationQuiver::in_adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) adj[e.to].push_back(e.from);
    return adj;
}

Engine::Engine(std::shared_ptr<const IndecPool> pool) : pool_(std::move(pool)) {
    n_ = pool_->quiver->vertex_count();
    if (n_ > 64) throw UsageError("engine supports at most 64 vertices");
    const int sz = pool_->size();
    words_ = (sz + 63) / 64;
    adj_.assign(sz, Bits(sz));
    perp_tau_.assign(sz, Bits(sz));
    vanish_at_.assign(n_, Bits(sz));
    supp_mask_.assign(sz, 0);
    for (int i = 0; i < sz; ++i) {
        for (int v = 0; v < n_; ++v)
            if (pool_->modules[i].dim[v] != 0) supp_mask_[i] |= std::uint64_t(1) << v;
        for (int j = 0; j < sz; ++j) {
            if (pool_->hom_tau[j][i] == 0) perp_tau_[i].set(j);
            if (i != j && pool_->hom_tau[i][j] == 0 && pool_->hom_tau[j][i] == 0) adj_[i].set(j);
        }
    }
    for (int v = 0; v < n_; ++v)
        for (int i = 0; i < sz; ++i)
            if (pool_->modules[i].dim[v] == 0) vanish_at_[v].set(i);
}

bool Engine::compatible(int i, int j) const {
    if (i == j) return pool_->hom_tau[i][i] == 0;
    return adj_[i].test(j);
}

bool Engine::is_tau_rigid_pair(const std::vector<int>& modules, const std::vector<int>& support) const {
    for (int i : modules)
        if (i < 0 || i >= pool_->size()) throw UsageError("unknown pool index " + std::to_string(i));
    for (int v : support)
        if (v < 0 || v >= n_) throw UsageError("unknown vertex index " + std::to_string(v));
    for (std::size_t a = 0; a < modules.size(); ++a) {
        if (pool_->hom_tau[modules[a]][modules[a]] != 0) return false;
        for (std::size_t b = a + 1; b < modules.size(); ++b)
            if (!adj_[modules[a]].test(modules[b])) return false;
    }
    for (int v : support)
        for (int i : modules)
            if (pool_->modules[i].dim[v] != 0) return false;  // Hom(P_v, X) = dim X_v
    return true;
}

bool Engine::is_support_tau_tilting(const Pair& p) const {
    if (static_cast<int>(p.modules.size() + p.support.size()) != n_) return false;
    {
        std::set<int> m(p.modules.begin(), p.modules.end()), s(p.support.begin(), p.support.end());
        if (m.size() != p.modules.size() || s.size() != p.support.size()) return false;
    }
    if (!is_tau_rigid_pair(p.modules, p.support)) return false;
    // The support projectives must be exactly the complement of supp(M).
    std::uint64_t supp = 0;
    for (int i : p.modules) supp |= supp_mask_[i];
    std::uint64_t pmask = 0;
    for (int v : p.support) pmask |= std::uint64_t(1) << v;
    return (supp & pmask) == 0 && __builtin_popcountll(supp) == static_cast<int>(p.modules.size()) &&
           (supp | pmask) == (n_ == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n_) - 1);
}

void Engine::clique_walk(const std::function<void(const std::vector<int>&, std::uint64_t)>& emit) const {
    const int sz = pool_->size();
    std::vector<int> clique;
    std::function<void(const Bits&, std::uint64_t, int)> walk = [&](const Bits& allowed, std::uint64_t supp,
                                                                    int from) {
        emit(clique, supp);
        for (int i = from; i < sz; ++i) {
            if (!allowed.test(i)) continue;
            Bits next = allowed;
            next &= adj_[i];
            clique.push_back(i);
            walk(next, supp | supp_mask_[i], i + 1);
            clique.pop_back();
        }
    };
    // Self-rigidity holds for every pool member (checked at pool build), so
    // every singleton is admissible.
    walk(Bits::all(sz), 0, 0);
}

std::vector<Pair> Engine::enumerate_pairs() const {
    std::vector<Pair> out;
    clique_walk([&](const std::vector<int>& clique, std::uint64_t supp) {
        if (__builtin_popcountll(supp) != static_cast<int>(clique.size())) return;
        Pair p;
        p.modules = clique;
        for (int v = 0; v < n_; ++v)
            if (!(supp >> v & 1)) p.support.push_back(v);
        out.push_back(std::move(p));
    });
    std::sort(out.begin(), out.end(), [&](const Pair& a, const Pair& b) { return pair_less(a, b); });
    return out;
}

std::vector<std::vector<int>> Engine::enumerate_rigid_sets() const {
    std::vector<std::vector<int>> out;
    clique_walk([&](const std::vector<int>& clique, std::uint64_t) { out.push_back(clique); });
    return out;
}

Pair Engine::projectives_pair() const {
    Pair p;
    for (int i = 0; i < pool_->size(); ++i)
        if (pool_->modules[i].is_projective) p.modules.push_back(i);
    if (static_cast<int>(p.modules.size()) != n_) throw InternalError("projective census broken");
    return p;
}

Pair Engine::zero_pair() const {
    Pair p;
    for (int v = 0; v < n_; ++v) p.support.push_back(v);
    return p;
}

Bits Engine::fac_bits(const Pair& p) const {
    Bits b = Bits::all(pool_->size());
    for (int j : p.modules) b &= perp_tau_[j];
    for (int v : p.support) b &= vanish_at_[v];
    return b;
}

Bits Engine::fac_bits_trace(const Pair& p) const {
    Representation t = pair_module(p);
    Bits b(pool_->size());
    for (int i = 0; i < pool_->size(); ++i)
        if (fac_contains(t, pool_->modules[i].rep)) b.set(i);
    return b;
}

Pair Engine::bongartz_completion_torsion(const std::vector<int>& modules) const {
    if (!is_tau_rigid_pair(modules, {})) throw UsageError("bongartz completion needs a tau-rigid module set");
    Bits s = Bits::all(pool_->size());
    for (int j : modules) s &= perp_tau_[j];
    Pair out;
    for (int x = 0; x < pool_->size(); ++x) {
        if (!s.test(x)) continue;
        bool extproj = true;
        for (int y = 0; y < pool_->size() && extproj; ++y)
            if (s.test(y) && pool_->ext[x][y] != 0) extproj = false;
        if (extproj) out.modules.push_back(x);
    }
    for (int j : modules)
        if (!std::binary_search(out.modules.begin(), out.modules.end(), j))
            throw InternalError("Bongartz torsion completion lost an input summand");
    if (static_cast<int>(out.modules.size()) != n_) {
        if (!pool_->exhaustive)
            throw PoolError("Bongartz completion is not resolvable within the bounded pool");
        throw InternalError("Bongartz torsion completion has wrong summand count");
    }
    return out;
}

Pair Engine::bongartz_completion_extension(const std::vector<int>& modules) const {
    if (!is_tau_rigid_pair(modules, {}))
        throw UsageError("bongartz completion needs a partial tilting module set");
    Representation m = direct_sum_of(*pool_, modules);
    std::vector<Representation> projs;
    for (int v = 0; v < n_; ++v) projs.push_back(projective_rep(pool_->quiver, v));
    Representation a = direct_sum(projs);
    int s = static_cast<int>(ext1_dim(m, a));
    UniversalExtension ue = universal_extension_middle(m, a, s);
    auto summands = decompose(ue.middle, *pool_);
    std::set<int> result(modules.begin(), modules.end());
    for (auto [idx, mult] : summands) result.insert(idx);
    // Summands of E in add(M) stay; the rest is the Bongartz complement.
    Pair out;
    out.modules.assign(result.begin(), result.end());
    if (static_cast<int>(out.modules.size()) != n_)
        throw InternalError("universal extension completion has wrong summand count");
    if (!is_tau_rigid_pair(out.modules, {}))
        throw InternalError("universal extension completion is not rigid");
    return out;
}

ComplementsResult Engine::complements_of_almost_complete(const std::vector<int>& modules) const {
    if (static_cast<int>(modules.size()) != n_ - 1)
        throw UsageError("almost complete tilting module needs n-1 summands");
    if (!is_tau_rigid_pair(modules, {})) throw UsageError("input is not partial tilting");
    ComplementsResult res;
    Bits cand = Bits::all(pool_->size());
    for (int j : modules) cand &= adj_[j];
    for (int x = 0; x < pool_->size(); ++x) {
        if (!cand.test(x)) continue;
        if (std::find(modules.begin(), modules.end(), x) != modules.end()) continue;
        res.complements.push_back(x);
    }
    if (res.complements.empty() || res.complements.size() > 2)
        throw InternalError("almost complete tilting module with " + std::to_string(res.complements.size()) +
                            " complements");
    res.faithful = is_faithful(direct_sum_of(*pool_, modules));
    // The Bongartz complement: completion whose torsion class is perp(tau M).
    Bits perp = Bits::all(pool_->size());
    for (int j : modules) perp &= perp_tau_[j];
    for (int x : res.complements) {
        Pair t;
        t.modules = modules;
        t.modules.push_back(x);
        std::sort(t.modules.begin(), t.modules.end());
        if (fac_bits(t) == perp) {
            if (res.bongartz >= 0) throw InternalError("two Bongartz complements");
            res.bongartz = x;
        }
    }
    if (res.bongartz < 0) throw InternalError("no Bongartz complement identified");
    return res;
}

// ---------------------------------------------------------------------------
// Minimal approximations.

namespace {

std::vector<Rat> vec_of(const Morphism& f) {
    std::vector<Rat> out;
    for (const auto& b : f.blocks)
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) out.push_back(b.at(r, c));
    return out;
}

RatMatrix columns_of(const std::vector<std::vector<Rat>>& cols) {
    if (cols.empty()) return RatMatrix(0, 0);
    RatMatrix m(cols.front().size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) m.at(r, c) = cols[c][r];
    return m;
}

// Is v in the column space of m?
bool in_span(const RatMatrix& m, const std::vector<Rat>& v) {
    RatMatrix aug = hstack(m, columns_of({v}));
    return aug.rank() == m.rank();
}

}  // namespace

ApproximationResult Engine::minimal_left_approximation(int x, const std::vector<int>& targets) const {
    const Representation& xr = pool_->modules[x].rep;
    std::vector<int> tg = targets;
    std::sort(tg.begin(), tg.end());
    tg.erase(std::unique(tg.begin(), tg.end()), tg.end());

    struct Entry {
        int target;
        Morphism map;
    };
    std::vector<Entry> entries;
    std::map<int, std::vector<Morphism>> hom_xu;
    std::map<std::pair<int, int>, std::vector<Morphism>> hom_uu;
    for (int u : tg) {
        hom_xu[u] = hom_basis(xr, pool_->modules[u].rep);
        for (const auto& f : hom_xu[u]) entries.push_back(Entry{u, f});
    }
    for (int u1 : tg)
        for (int u2 : tg) hom_uu[{u1, u2}] = hom_basis(pool_->modules[u1].rep, pool_->modules[u2].rep);

    // Vectorized composites c o f_e for every entry e and target u, computed
    // once; the approximation test is then a pure span condition.
    std::vector<std::map<int, std::vector<std::vector<Rat>>>> composed(entries.size());
    for (std::size_t e = 0; e < entries.size(); ++e)
        for (int u : tg)
            for (const auto& c : hom_uu[{entries[e].target, u}])
                composed[e][u].push_back(vec_of(compose(c, entries[e].map)));

    // An entry multiset S is a left approximation iff every basis map X -> u
    // lies in the span of the composites through S.
    auto is_approx = [&](const std::vector<char>& active) {
        for (int u : tg) {
            if (hom_xu[u].empty()) continue;
            std::vector<std::vector<Rat>> span_cols;
            for (std::size_t e = 0; e < entries.size(); ++e) {
                if (!active[e]) continue;
                for (const auto& col : composed[e][u]) span_cols.push_back(col);
            }
            std::vector<std::vector<Rat>> need;
            for (const auto& g : hom_xu[u]) need.push_back(vec_of(g));
            bool all_zero = true;
            for (const auto& gv : need)
                for (const Rat& r : gv)
                    if (r != 0) all_zero = false;
            if (all_zero) continue;
            if (span_cols.empty()) return false;
            RatMatrix span = columns_of(span_cols);
            RatMatrix aug = span;
            for (const auto& gv : need) aug = hstack(aug, columns_of({gv}));
            if (aug.rank() != span.rank()) return false;
        }
        return true;
    };

    std::vector<char> active(entries.size(), 1);
    if (!is_approx(active)) throw InternalError("universal stack is not an approximation");
    // Greedy deletion: drop a copy whenever the approximation property survives.
    for (std::size_t e = 0; e < entries.size(); ++e) {
        active[e] = 0;
        if (!is_approx(active)) active[e] = 1;
    }

    ApproximationResult res;
    std::map<int, int> mult;
    std::vector<Representation> parts;
    std::vector<const Morphism*> chosen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        if (!active[e]) continue;
        ++mult[entries[e].target];
        parts.push_back(pool_->modules[entries[e].target].rep);
        chosen.push_back(&entries[e].map);
    }
    for (auto [u, c] : mult) res.multiplicities.push_back({u, c});

    Representation up = parts.empty() ? zero_rep(pool_->quiver) : direct_sum(parts);
    std::vector<RatMatrix> blocks;
    for (int v = 0; v < n_; ++v) {
        RatMatrix b(up.dims[v], xr.dims[v]);
        long long off = 0;
        for (const Morphism* f : chosen) {
            for (std::size_t r = 0; r < f->blocks[v].rows(); ++r)
                for (std::size_t c = 0; c < f->blocks[v].cols(); ++c) b.at(off + r, c) = f->blocks[v].at(r, c);
            off += static_cast<long long>(f->blocks[v].rows());
        }
        blocks.push_back(std::move(b));
    }
    res.map = Morphism{xr, up, std::move(blocks)};
    if (!morphism_ok(res.map)) throw InternalError("approximation stack is not a morphism");
    res.approximation_ok = is_approx(active);

    // Independent certificate: multiplicities must match the top formula
    // dim Hom(X,u) - dim( sum over u' != u of Hom(u',u) o Hom(X,u') ).
    res.multiplicities_minimal = true;
    for (int u : tg) {
        std::vector<std::vector<Rat>> rad_cols;
        for (int u2 : tg) {
            if (u2 == u) continue;
            for (const auto& c : hom_uu[{u2, u}])
                for (const auto& g : hom_xu[u2]) rad_cols.push_back(vec_of(compose(c, g)));
        }
        long long expected = static_cast<long long>(hom_xu[u].size()) -
                             static_cast<long long>(columns_of(rad_cols).rank());
        long long got = mult.count(u) ? mult[u] : 0;
        if (expected != got) res.multiplicities_minimal = false;
    }

    // Necessary left-minimality condition via endomorphisms annihilating f.
    res.endo_ok = true;
    if (!up.is_zero()) {
        std::vector<Morphism> endos = hom_basis(up, up);
        // Solve t o f = 0 over the endomorphism coordinates.
        std::vector<std::vector<Rat>> cols;
        for (const auto& t : endos) cols.push_back(vec_of(compose(t, res.map)));
        RatMatrix sys = columns_of(cols);
        RatMatrix ker = sys.kernel_basis();
        for (std::size_t kc = 0; kc < ker.cols() && res.endo_ok; ++kc) {
            Morphism t0 = zero_morphism(up, up);
            for (std::size_t e = 0; e < endos.size(); ++e)
                if (ker.at(e, kc) != 0) t0 = add(t0, scale(endos[e], ker.at(e, kc)));
            Morphism cand = add(identity_morphism(up), t0);
            for (int v = 0; v < n_ && res.endo_ok; ++v)
                if (cand.blocks[v].rank() != static_cast<std::size_t>(up.dims[v])) res.endo_ok = false;
        }
    }
    return res;
}

ExchangeResult Engine::exchange_sequence(int x, int y, const std::vector<int>& modules) const {
    ExchangeResult res;
    if (pool_->ext[y][x] == 0) {
        if (pool_->ext[x][y] == 0)
            throw InternalError("complements with Ext^1 vanishing in both orders");
        std::swap(x, y);
    }
    res.x = x;
    res.y = y;
    ApproximationResult f = minimal_left_approximation(x, modules);
    for (int v = 0; v < n_; ++v)
        if (f.map.blocks[v].kernel_basis().cols() != 0)
            throw InternalError("exchange approximation is not injective");
    CokernelData ck = cokernel_of(f.map);
    auto coker = decompose(ck.rep, *pool_);
    if (coker.size() != 1 || coker[0].first != y || coker[0].second != 1)
        throw InternalError("exchange cokernel is not the expected complement");
    res.seq = ShortExactSequence{f.map, ck.proj};
    if (!ses_ok(res.seq)) throw InternalError("exchange sequence is not exact");
    res.middle = decompose(f.map.target, *pool_);
    res.f_minimal_left = f.approximation_ok && f.multiplicities_minimal && f.endo_ok;

    // Nonsplit: middle term differs from X + Y as a multiset.
    std::vector<std::pair<int, int>> split{{std::min(x, y), 1}, {std::max(x, y), 1}};
    res.nonsplit = res.middle != split;

    // add(M') and add(Y) share no summand.
    res.disjoint_from_cokernel = true;
    for (auto [idx, mult] : res.middle)
        if (idx == y) res.disjoint_from_cokernel = false;

    // g is a right add(M)-approximation with right-minimal multiplicities.
    res.g_minimal_right = true;
    const Representation& up = f.map.target;
    std::map<int, std::vector<Morphism>> hom_uc, hom_uu;
    std::vector<int> tg = modules;
    std::sort(tg.begin(), tg.end());
    tg.erase(std::unique(tg.begin(), tg.end()), tg.end());
    for (int u : tg) {
        hom_uc[u] = hom_basis(pool_->modules[u].rep, ck.rep);
        std::vector<std::vector<Rat>> span_cols;
        for (const auto& c : hom_basis(pool_->modules[u].rep, up)) span_cols.push_back(vec_of(compose(ck.proj, c)));
        RatMatrix span = columns_of(span_cols);
        for (const auto& h : hom_uc[u]) {
            std::vector<Rat> hv = vec_of(h);
            bool zero = std::all_of(hv.begin(), hv.end(), [](const Rat& r) { return r == 0; });
            if (zero) continue;
            if (span_cols.empty() || !in_span(span, hv)) res.g_minimal_right = false;
        }
    }
    // Right-minimal multiplicity formula for the middle term.
    std::map<int, int> mult;
    for (auto [idx, m] : res.middle) mult[idx] = m;
    for (int u : tg) {
        std::vector<std::vector<Rat>> rad_cols;
        for (int u2 : tg) {
            if (u2 == u) continue;
            for (const auto& c : hom_basis(pool_->modules[u].rep, pool_->modules[u2].rep))
                for (const auto& h : hom_basis(pool_->modules[u2].rep, ck.rep))
                    rad_cols.push_back(vec_of(compose(h, c)));
        }
        long long expected = static_cast<long long>(hom_uc[u].size()) -
                             static_cast<long long>(columns_of(rad_cols).rank());
        long long got = mult.count(u) ? mult[u] : 0;
        if (expected != got) res.g_minimal_right = false;
    }
    return res;
}

std::vector<int> Engine::ext_projectives_of_fac(const std::vector<int>& t_modules) const {
    Representation t = direct_sum_of(*pool_, t_modules);
    std::vector<int> fac;
    for (int i = 0; i < pool_->size(); ++i)
        if (fac_contains(t, pool_->modules[i].rep)) fac.push_back(i);
    std::vector<int> out;
    for (int e : fac) {
        bool proj = true;
        for (int xx : fac)
            if (pool_->ext[e][xx] != 0) proj = false;
        if (proj) out.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mutation.

std::optional<Pair> Engine::other_completion(const std::vector<int>& modules, const std::vector<int>& support,
                                             const Pair& self) const {
    std::uint64_t qmask = 0;
    for (int v : support) qmask |= std::uint64_t(1) << v;
    std::uint64_t usupp = 0;
    for (int i : modules) usupp |= supp_mask_[i];
    const std::uint64_t full = n_ == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n_) - 1;

    std::vector<Pair> found;
    // Module completions.
    for (int x = 0; x < pool_->size(); ++x) {
        if (std::find(modules.begin(), modules.end(), x) != modules.end()) continue;
        bool ok = true;
        for (int u : modules)
            if (!adj_[x].test(u)) ok = false;
        if (!ok || (supp_mask_[x] & qmask)) continue;
        std::uint64_t supp = usupp | supp_mask_[x];
        if (__builtin_popcountll(supp) != static_cast<int>(modules.size()) + 1) continue;
        if ((supp | qmask) != full) continue;
        Pair p;
        p.modules = modules;
        p.modules.push_back(x);
        std::sort(p.modules.begin(), p.modules.end());
        p.support = support;
        if (!(p == self)) found.push_back(std::move(p));
    }
    // Support completion: the unique vertex closing the complement, if any.
    std::uint64_t free = full & ~usupp & ~qmask;
    if (__builtin_popcountll(usupp) == static_cast<int>(modules.size()) && __builtin_popcountll(free) == 1) {
        int v = __builtin_ctzll(free);
        Pair p;
        p.modules = modules;
        p.support = support;
        p.support.push_back(v);
        std::sort(p.support.begin(), p.support.end());
        if (!(p == self)) found.push_back(std::move(p));
    }
    if (found.size() > 1) throw InternalError("almost complete pair with more than two completions");
    if (found.empty()) return std::nullopt;
    return found[0];
}

ExchangeSequenceRecord Engine::build_record(const Pair& larger, int removed_module, const Pair& smaller) const {
    ExchangeSequenceRecord rec;
    rec.left_removed = removed_module;
    std::vector<int> remaining;
    for (int i : larger.modules)
        if (i != removed_module) remaining.push_back(i);
    ApproximationResult f = minimal_left_approximation(removed_module, remaining);
    rec.approx_target = f.multiplicities;
    CokernelData ck = cokernel_of(f.map);
    if (ck.rep.is_zero()) {
        rec.y_zero = true;
        for (int v = 0; v < n_; ++v)
            if (static_cast<long long>(f.map.blocks[v].rank()) != f.map.target.dims[v])
                throw InternalError("exchange record not exact at U' (zero cokernel)");
    } else {
        rec.cokernel = decompose(ck.rep, *pool_);  // PoolError escapes on bounded pools
        // Exactness of X -> U' -> Y -> 0 at U' and Y.
        Morphism comp = compose(ck.proj, f.map);
        if (!comp.is_zero()) throw InternalError("exchange record sequence not a complex");
        for (int v = 0; v < n_; ++v) {
            long long im_f = static_cast<long long>(f.map.blocks[v].rank());
            long long rk_g = static_cast<long long>(ck.proj.blocks[v].rank());
            if (im_f + rk_g != f.map.target.dims[v]) throw InternalError("exchange record not exact at U'");
            if (rk_g != ck.rep.dims[v]) throw InternalError("exchange record not exact at Y");
        }
    }
    // Case split of the exchange lemma: non-sincere remainder drops to a
    // support pair, sincere remainder swaps in the new indecomposable Y_1.
    std::set<int> expect(remaining.begin(), remaining.end());
    if (!rec.y_zero) {
        if (rec.cokernel.empty()) throw InternalError("empty cokernel decomposition");
        int y1 = rec.cokernel.front().first;
        for (auto [idx, mult] : rec.cokernel)
            if (idx != y1) throw InternalError("exchange cokernel is not isotypic");
        expect.insert(y1);
    }
    std::set<int> got(smaller.modules.begin(), smaller.modules.end());
    if (expect != got) throw InternalError("exchange record disagrees with the searched completion");
    rec.result = smaller;
    return rec;
}

Engine::MutationStep Engine::mutate_at_module(const Pair& p, int module_index) const {
    if (!is_support_tau_tilting(p)) throw UsageError("mutation needs a support tau-tilting pair");
    if (std::find(p.modules.begin(), p.modules.end(), module_index) == p.modules.end())
        throw UsageError("mutation position is not a summand of the pair");
    std::vector<int> rest;
    for (int i : p.modules)
        if (i != module_index) rest.push_back(i);
    auto other = other_completion(rest, p.support, p);
    if (!other) {
        if (!pool_->exhaustive) throw PoolError("mutation leaves the explored pool region");
        throw InternalError("missing second completion on an exhaustive pool");
    }
    MutationStep step;
    step.result = *other;
    Bits mine = fac_bits(p), theirs = fac_bits(*other);
    bool down = theirs.subset_of(mine) && !(theirs == mine);
    bool up = mine.subset_of(theirs) && !(theirs == mine);
    if (down == up) throw InternalError("mutation neighbours with incomparable torsion classes");
    if (down) {
        step.record = build_record(p, module_index, *other);
        step.record.direction = ExchangeSequenceRecord::Direction::Left;
    } else {
        // Right mutation: record the exchange from the other side.
        std::vector<int> extra;
        for (int i : other->modules)
            if (std::find(p.modules.begin(), p.modules.end(), i) == p.modules.end()) extra.push_back(i);
        if (extra.size() != 1) throw InternalError("module exchange did not swap one summand");
        step.record = build_record(*other, extra[0], p);
        step.record.direction = ExchangeSequenceRecord::Direction::Right;
        step.record.result = *other;
    }
    step.record.at_support = false;
    step.record.removed_module = module_index;
    return step;
}

Engine::MutationStep Engine::mutate_at_support(const Pair& p, int vertex) const {
    if (!is_support_tau_tilting(p)) throw UsageError("mutation needs a support tau-tilting pair");
    if (std::find(p.support.begin(), p.support.end(), vertex) == p.support.end())
        throw UsageError("mutation position is not a support vertex of the pair");
    std::vector<int> rest;
    for (int v : p.support)
        if (v != vertex) rest.push_back(v);
    auto other = other_completion(p.modules, rest, p);
    if (!other) {
        if (!pool_->exhaustive) throw PoolError("mutation leaves the explored pool region");
        throw InternalError("missing second completion on an exhaustive pool");
    }
    // Removing a support vertex always moves up: the other completion gains a
    // module summand, so its torsion class is strictly larger.
    MutationStep step;
    step.result = *other;
    std::vector<int> extra;
    for (int i : other->modules)
        if (std::find(p.modules.begin(), p.modules.end(), i) == p.modules.end()) extra.push_back(i);
    if (extra.size() != 1) throw InternalError("support exchange did not add one summand");
    Bits mine = fac_bits(p), theirs = fac_bits(*other);
    if (!mine.subset_of(theirs) || mine == theirs)
        throw InternalError("support mutation did not enlarge the torsion class");
    step.record = build_record(*other, extra[0], p);
    step.record.direction = ExchangeSequenceRecord::Direction::Right;
    step.record.at_support = true;
    step.record.removed_support = vertex;
    step.record.result = *other;
    return step;
}

// ---------------------------------------------------------------------------
// Graphs.

namespace {

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

bool Engine::pair_less(const Pair& a, const Pair& b) const {
    std::vector<DimVector> da, db;
    for (int i : a.modules) da.push_back(pool_->modules[i].dim);
    for (int i : b.modules) db.push_back(pool_->modules[i].dim);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    return std::tie(da, a.support) < std::tie(db, b.support);
}

std::string Engine::pair_id(const Pair& p) const {
    std::vector<std::string> dims;
    for (int i : p.modules) dims.push_back(dim_to_string(pool_->modules[i].dim));
    std::sort(dims.begin(), dims.end());
    std::ostringstream os;
    os << "M:";
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "+" : "") << dims[i];
    os << ";P:";
    for (std::size_t i = 0; i < p.support.size(); ++i)
        os << (i ? "," : "") << pool_->quiver->vertex_id(p.support[i]);
    return os.str();
}

std::string Engine::edge_label(const Pair& from, const Pair& to) const {
    std::vector<int> lost;
    for (int i : from.modules)
        if (std::find(to.modules.begin(), to.modules.end(), i) == to.modules.end()) lost.push_back(i);
    if (lost.size() != 1) {
        // Not a single-summand exchange; label verbatim so graph comparisons
        // fail loudly instead of crashing.
        std::ostringstream os;
        os << "multi:";
        for (int i : lost) os << dim_to_string(pool_->modules[i].dim) << "|";
        return os.str();
    }
    return dim_to_string(pool_->modules[lost[0]].dim);
}

MutationQuiver Engine::build_mutation_quiver(const BuildOptions& opt) const {
    if (!pool_->exhaustive)
        throw UsageError("exhaustive mutation quiver needs a representation-finite pool; use the BFS builder");
    MutationQuiver mq;
    mq.pool = pool_;
    mq.exhaustive = true;
    mq.vertices = enumerate_pairs();
    const int nv = static_cast<int>(mq.vertices.size());

    // Almost-pair keys: removing each position once; every key must join
    // exactly two pairs (the two completions).
    std::map<std::vector<int>, std::vector<int>> buckets;
    for (int vi = 0; vi < nv; ++vi) {
        const Pair& p = mq.vertices[vi];
        for (std::size_t k = 0; k < p.modules.size(); ++k) {
            std::vector<int> key;
            for (std::size_t j = 0; j < p.modules.size(); ++j)
                if (j != k) key.push_back(p.modules[j]);
            key.push_back(-1);
            for (int v : p.support) key.push_back(v);
            buckets[key].push_back(vi);
        }
        for (std::size_t k = 0; k < p.support.size(); ++k) {
            std::vector<int> key(p.modules);
            key.push_back(-1);
            for (std::size_t j = 0; j < p.support.size(); ++j)
                if (j != k) key.push_back(p.support[j]);
            buckets[key].push_back(vi);
        }
    }
    std::vector<Bits> fac(nv, Bits(0));
    run_parallel(nv, opt.workers, [&](int vi) { fac[vi] = fac_bits(mq.vertices[vi]); });
    std::set<std::pair<int, int>> seen;
    for (const auto& [key, members] : buckets) {
        if (members.size() != 2)
            throw InternalError("almost complete pair with " + std::to_string(members.size()) + " completions");
        int aidx = members[0], bidx = members[1];
        if (!seen.insert({std::min(aidx, bidx), std::max(aidx, bidx)}).second) continue;
        bool ab = fac[bidx].subset_of(fac[aidx]) && !(fac[aidx] == fac[bidx]);
        bool ba = fac[aidx].subset_of(fac[bidx]) && !(fac[aidx] == fac[bidx]);
        if (ab == ba) throw InternalError("adjacent pairs with incomparable torsion classes");
        int from = ab ? aidx : bidx, to = ab ? bidx : aidx;
        mq.edges.push_back(MQEdge{from, to, edge_label(mq.vertices[from], mq.vertices[to])});
    }
    std::sort(mq.edges.begin(), mq.edges.end(), [](const MQEdge& a, const MQEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });

    mq.is_tau_tilting.assign(nv, 0);
    mq.is_tilting.assign(nv, 0);
    mq.boundary.assign(nv, 0);
    std::vector<char> faithful(nv, 0);
    run_parallel(nv, opt.workers, [&](int vi) {
        if (!mq.vertices[vi].support.empty()) return;
        if (opt.honest_faithful)
            faithful[vi] = is_faithful(pair_module(mq.vertices[vi])) ? 1 : 0;
        else
            faithful[vi] = 1;  // hereditary: tau-tilting modules are faithful
    });
    for (int vi = 0; vi < nv; ++vi) {
        mq.is_tau_tilting[vi] = mq.vertices[vi].support.empty();
        mq.is_tilting[vi] = mq.is_tau_tilting[vi] && faithful[vi];
        if (mq.is_tau_tilting[vi] && !mq.is_tilting[vi])
            throw InternalError("tau-tilting module failed the faithfulness check (hereditary)");
    }
    return mq;
}

MutationQuiver Engine::build_mutation_quiver_bfs(int depth, const BuildOptions& opt) const {
    MutationQuiver mq;
    mq.pool = pool_;
    mq.exhaustive = false;
    std::map<Pair, int> index;
    std::deque<std::pair<Pair, int>> queue;
    Pair start = projectives_pair();
    index[start] = 0;
    mq.vertices.push_back(start);
    mq.boundary.push_back(0);
    queue.push_back({start, 0});
    std::set<std::pair<int, int>> seen_edges;

    while (!queue.empty()) {
        auto [p, dist] = queue.front();
        queue.pop_front();
        int pi = index[p];
        if (dist >= depth) {
            mq.boundary[pi] = 1;
            continue;
        }
        std::vector<MutationStep> steps;
        bool hit_boundary = false;
        for (int m : p.modules) {
            try {
                steps.push_back(mutate_at_module(p, m));
            } catch (const PoolError&) {
                hit_boundary = true;
            }
        }
        for (int v : p.support) {
            try {
                steps.push_back(mutate_at_support(p, v));
            } catch (const PoolError&) {
                hit_boundary = true;
            }
        }
        if (hit_boundary) mq.boundary[pi] = 1;
        for (const auto& st : steps) {
            auto it = index.find(st.result);
            int qi;
            if (it == index.end()) {
                qi = static_cast<int>(mq.vertices.size());
                index[st.result] = qi;
                mq.vertices.push_back(st.result);
                mq.boundary.push_back(0);
                queue.push_back({st.result, dist + 1});
            } else {
                qi = it->second;
            }
            auto key = std::minmax(pi, qi);
            if (!seen_edges.insert({key.first, key.second}).second) continue;
            bool left = st.record.direction == ExchangeSequenceRecord::Direction::Left;
            int from = left ? pi : qi, to = left ? qi : pi;
            mq.edges.push_back(MQEdge{from, to, edge_label(mq.vertices[from], mq.vertices[to])});
        }
    }
    const int nv = static_cast<int>(mq.vertices.size());
    mq.is_tau_tilting.assign(nv, 0);
    mq.is_tilting.assign(nv, 0);
    std::vector<char> faithful(nv, 0);
    run_parallel(nv, opt.workers, [&](int vi) {
        if (!mq.vertices[vi].support.empty()) return;
        faithful[vi] = (!opt.honest_faithful || is_faithful(pair_module(mq.vertices[vi]))) ? 1 : 0;
    });
    for (int vi = 0; vi < nv; ++vi) {
        mq.is_tau_tilting[vi] = mq.vertices[vi].support.empty();
        mq.is_tilting[vi] = mq.is_tau_tilting[vi] && faithful[vi];
    }
    std::sort(mq.edges.begin(), mq.edges.end(), [](const MQEdge& a, const MQEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return mq;
}

MutationQuiver Engine::tilting_subquiver(const MutationQuiver& mq) const {
    MutationQuiver sub;
    sub.pool = mq.pool;
    sub.exhaustive = mq.exhaustive;
    std::vector<int> remap(mq.vertices.size(), -1);
    for (std::size_t i = 0; i < mq.vertices.size(); ++i) {
        if (!mq.is_tilting[i]) continue;
        remap[i] = static_cast<int>(sub.vertices.size());
        sub.vertices.push_back(mq.vertices[i]);
        sub.is_tau_tilting.push_back(1);
        sub.is_tilting.push_back(1);
        sub.boundary.push_back(mq.boundary.empty() ? 0 : mq.boundary[i]);
    }
    for (const auto& e : mq.edges)
        if (remap[e.from] >= 0 && remap[e.to] >= 0)
            sub.edges.push_back(MQEdge{remap[e.from], remap[e.to], e.label});
    return sub;
}

std::vector<SaturationRow> Engine::saturation_report(const MutationQuiver& mq) const {
    std::vector<SaturationRow> rows;
    std::vector<int> s(mq.vertices.size(), 0), e(mq.vertices.size(), 0);
    for (const auto& ed : mq.edges) {
        if (!mq.is_tilting[ed.from] || !mq.is_tilting[ed.to]) continue;
        ++s[ed.from];
        ++e[ed.to];
    }
    for (std::size_t i = 0; i < mq.vertices.size(); ++i) {
        if (!mq.is_tilting[i]) continue;
        SaturationRow row;
        row.vertex = static_cast<int>(i);
        row.starting = s[i];
        row.ending = e[i];
        row.saturated = s[i] + e[i] == n_;
        DimVector total(n_, 0);
        for (int m : mq.vertices[i].modules)
            for (int v = 0; v < n_; ++v) total[v] += pool_->modules[m].dim[v];
        row.dim_criterion = std::all_of(total.begin(), total.end(), [](long long d) { return d >= 2; });
        row.indeterminate = !mq.boundary.empty() && mq.boundary[i];
        rows.push_back(row);
    }
    return rows;
}

std::vector<ComponentSummary> Engine::component_analysis(const MutationQuiver& tilting) const {
    const int nv = static_cast<int>(tilting.vertices.size());
    std::vector<int> comp(nv, -1);
    std::vector<std::vector<int>> adj(nv);
    for (const auto& e : tilting.edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    int nc = 0;
    for (int i = 0; i < nv; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
        ++nc;
    }
    std::vector<ComponentSummary> out(nc);
    auto rows = saturation_report(tilting);
    std::map<int, const SaturationRow*> row_of;
    for (const auto& r : rows) row_of[r.vertex] = &r;
    for (int i = 0; i < nv; ++i) {
        ComponentSummary& c = out[comp[i]];
        ++c.vertices;
        const SaturationRow* r = row_of.count(i) ? row_of[i] : nullptr;
        if (r && r->indeterminate)
            ++c.indeterminate;
        else if (r && !r->saturated)
            ++c.non_saturated;
    }
    return out;
}

std::vector<MQEdge> Engine::hasse_edges(const std::vector<Pair>& vertices) const {
    const int nv = static_cast<int>(vertices.size());
    std::vector<Bits> fac;
    fac.reserve(nv);
    for (const auto& p : vertices) fac.push_back(fac_bits(p));
    std::vector<MQEdge> edges;
    for (int i = 0; i < nv; ++i) {
        std::vector<int> below;
        for (int j = 0; j < nv; ++j)
            if (j != i && fac[j].subset_of(fac[i]) && !(fac[j] == fac[i])) below.push_back(j);
        for (int j : below) {
            bool maximal = true;
            for (int k : below)
                if (k != j && fac[j].subset_of(fac[k]) && !(fac[j] == fac[k])) maximal = false;
            if (maximal) edges.push_back(MQEdge{i, j, edge_label(vertices[i], vertices[j])});
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const MQEdge& a, const MQEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    return edges;
}

}  // namespace tautilt
