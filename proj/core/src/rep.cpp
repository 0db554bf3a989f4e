#include "tautilt/rep.hpp"

#include <algorithm>
#include <map>

#include "tautilt/errors.hpp"

namespace tautilt {

Representation::Representation(QuiverPtr q, DimVector d, std::vector<RatMatrix> maps)
    : quiver(std::move(q)), dims(std::move(d)), arrow_maps(std::move(maps)) {
    if (static_cast<int>(dims.size()) != quiver->vertex_count())
        throw InternalError("representation dims size mismatch");
    if (arrow_maps.size() != quiver->arrows().size())
        throw InternalError("representation arrow map count mismatch");
    for (std::size_t i = 0; i < arrow_maps.size(); ++i) {
        const Arrow& a = quiver->arrows()[i];
        if (arrow_maps[i].rows() != static_cast<std::size_t>(dims[a.dst]) ||
            arrow_maps[i].cols() != static_cast<std::size_t>(dims[a.src]))
            throw InternalError("arrow map shape mismatch at arrow " + a.label);
    }
}

long long Representation::total_dim() const {
    long long t = 0;
    for (long long d : dims) t += d;
    return t;
}

bool Morphism::is_zero() const {
    for (const auto& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

Representation zero_rep(QuiverPtr q) {
    DimVector d(q->vertex_count(), 0);
    std::vector<RatMatrix> maps(q->arrows().size());
    return Representation(std::move(q), std::move(d), std::move(maps));
}

Representation simple_rep(QuiverPtr q, int v) {
    DimVector d(q->vertex_count(), 0);
    d[v] = 1;
    std::vector<RatMatrix> maps;
    for (const auto& a : q->arrows()) maps.emplace_back(d[a.dst], d[a.src]);
    return Representation(std::move(q), std::move(d), std::move(maps));
}

PathBasis projective_path_basis(const Quiver& q, int v) {
    PathBasis at(q.vertex_count());
    std::vector<int> count(q.vertex_count(), 0);
    for (const auto& p : q.paths_from(v)) at[p.dst][p.arrows] = count[p.dst]++;
    return at;
}

PathBasis injective_path_basis(const Quiver& q, int v) {
    PathBasis at(q.vertex_count());
    std::vector<int> count(q.vertex_count(), 0);
    for (int s = 0; s < q.vertex_count(); ++s)
        for (const auto& p : q.paths_from(s))
            if (p.dst == v) at[s][p.arrows] = count[s]++;
    return at;
}

Representation projective_rep(QuiverPtr q, int v) {
    // (P_v)_j has the paths v ~> j as basis; arrow a: s -> t appends a.
    const int n = q->vertex_count();
    PathBasis at = projective_path_basis(*q, v);
    DimVector d(n, 0);
    for (int j = 0; j < n; ++j) d[j] = static_cast<long long>(at[j].size());
    std::vector<RatMatrix> maps;
    for (std::size_t ai = 0; ai < q->arrows().size(); ++ai) {
        const Arrow& a = q->arrows()[ai];
        RatMatrix m(d[a.dst], d[a.src]);
        for (const auto& [seq, col] : at[a.src]) {
            std::vector<int> ext = seq;
            ext.push_back(static_cast<int>(ai));
            m.at(at[a.dst].at(ext), col) = 1;
        }
        maps.push_back(std::move(m));
    }
    return Representation(std::move(q), std::move(d), std::move(maps));
}

Representation injective_rep(QuiverPtr q, int v) {
    // (I_v)_j has the paths j ~> v as basis; arrow a: s -> t strips a leading a.
    const int n = q->vertex_count();
    PathBasis at = injective_path_basis(*q, v);
    DimVector d(n, 0);
    for (int j = 0; j < n; ++j) d[j] = static_cast<long long>(at[j].size());
    std::vector<RatMatrix> maps;
    for (std::size_t ai = 0; ai < q->arrows().size(); ++ai) {
        const Arrow& a = q->arrows()[ai];
        RatMatrix m(d[a.dst], d[a.src]);
        for (const auto& [seq, col] : at[a.src]) {
            if (!seq.empty() && seq.front() == static_cast<int>(ai)) {
                std::vector<int> rest(seq.begin() + 1, seq.end());
                m.at(at[a.dst].at(rest), col) = 1;
            }
        }
        maps.push_back(std::move(m));
    }
    return Representation(std::move(q), std::move(d), std::move(maps));
}

SumLayout SumLayout::of(const std::vector<Representation>& parts, const Quiver& q) {
    SumLayout lay;
    DimVector cur(q.vertex_count(), 0);
    for (const auto& p : parts) {
        lay.offsets.push_back(cur);
        for (int v = 0; v < q.vertex_count(); ++v) cur[v] += p.dims[v];
    }
    return lay;
}

Representation direct_sum(const std::vector<Representation>& parts) {
    if (parts.empty()) throw InternalError("direct_sum of empty list needs a quiver");
    QuiverPtr q = parts.front().quiver;
    const int n = q->vertex_count();
    DimVector d(n, 0);
    for (const auto& p : parts)
        for (int v = 0; v < n; ++v) d[v] += p.dims[v];
    std::vector<RatMatrix> maps;
    for (std::size_t ai = 0; ai < q->arrows().size(); ++ai) {
        std::vector<RatMatrix> blocks;
        for (const auto& p : parts) blocks.push_back(p.arrow_maps[ai]);
        maps.push_back(diag_block(blocks));
    }
    return Representation(q, std::move(d), std::move(maps));
}

RatMatrix path_action(const Representation& m, const Path& p) {
    RatMatrix acc = RatMatrix::identity(m.dims[p.src]);
    for (int ai : p.arrows) acc = m.arrow_maps[ai] * acc;
    return acc;
}

Representation dual_rep(QuiverPtr opposite, const Representation& m) {
    // Same arrow order as the source quiver, endpoints swapped, maps transposed.
    std::vector<RatMatrix> maps;
    for (const auto& a : m.arrow_maps) maps.push_back(a.transpose());
    return Representation(std::move(opposite), m.dims, std::move(maps));
}

bool morphism_ok(const Morphism& f) {
    const Quiver& q = *f.source.quiver;
    for (int v = 0; v < q.vertex_count(); ++v)
        if (f.blocks[v].rows() != static_cast<std::size_t>(f.target.dims[v]) ||
            f.blocks[v].cols() != static_cast<std::size_t>(f.source.dims[v]))
            return false;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const Arrow& a = q.arrows()[ai];
        RatMatrix lhs = f.blocks[a.dst] * f.source.arrow_maps[ai];
        RatMatrix rhs = f.target.arrow_maps[ai] * f.blocks[a.src];
        if (!(lhs == rhs)) return false;
    }
    return true;
}

Morphism identity_morphism(const Representation& m) {
    std::vector<RatMatrix> blocks;
    for (long long d : m.dims) blocks.push_back(RatMatrix::identity(d));
    return Morphism{m, m, std::move(blocks)};
}

Morphism zero_morphism(const Representation& src, const Representation& dst) {
    std::vector<RatMatrix> blocks;
    for (int v = 0; v < src.vertex_count(); ++v) blocks.emplace_back(dst.dims[v], src.dims[v]);
    return Morphism{src, dst, std::move(blocks)};
}

Morphism compose(const Morphism& g, const Morphism& f) {
    std::vector<RatMatrix> blocks;
    for (int v = 0; v < f.source.vertex_count(); ++v) blocks.push_back(g.blocks[v] * f.blocks[v]);
    return Morphism{f.source, g.target, std::move(blocks)};
}

Morphism add(const Morphism& f, const Morphism& g) {
    std::vector<RatMatrix> blocks;
    for (int v = 0; v < f.source.vertex_count(); ++v) blocks.push_back(f.blocks[v] + g.blocks[v]);
    return Morphism{f.source, f.target, std::move(blocks)};
}

Morphism scale(const Morphism& f, const Rat& s) {
    std::vector<RatMatrix> blocks;
    for (const auto& b : f.blocks) blocks.push_back(b.scaled(s));
    return Morphism{f.source, f.target, std::move(blocks)};
}

}  // namespace tautilt
