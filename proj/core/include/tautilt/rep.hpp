#pragma once

#include <map>
#include <memory>
#include <vector>

#include "tautilt/quiver.hpp"
#include "tautilt/ratmat.hpp"

namespace tautilt {

using QuiverPtr = std::shared_ptr<const Quiver>;

/// Quiver representation: a space per vertex, a map per arrow. The arrow map
/// for a: s->t has shape dim(t) x dim(s). Immutable by convention.
struct Representation {
    QuiverPtr quiver;
    DimVector dims;
    std::vector<RatMatrix> arrow_maps;

    Representation() = default;
    Representation(QuiverPtr q, DimVector d, std::vector<RatMatrix> maps);

    long long total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    int vertex_count() const { return quiver->vertex_count(); }
};

/// Morphism of representations: per-vertex blocks satisfying, for every arrow
/// a: s->t, block[t] * source_map(a) = target_map(a) * block[s].
struct Morphism {
    Representation source;
    Representation target;
    std::vector<RatMatrix> blocks;

    bool is_zero() const;
};

Representation zero_rep(QuiverPtr q);
Representation simple_rep(QuiverPtr q, int v);
Representation projective_rep(QuiverPtr q, int v);
Representation injective_rep(QuiverPtr q, int v);

Representation direct_sum(const std::vector<Representation>& parts);

/// Evaluate a path as the composite linear map M_src -> M_dst.
RatMatrix path_action(const Representation& m, const Path& p);

/// Linear dual over the opposite quiver (arrow maps transposed).
Representation dual_rep(QuiverPtr opposite, const Representation& m);

bool morphism_ok(const Morphism& f);
Morphism identity_morphism(const Representation& m);
Morphism zero_morphism(const Representation& src, const Representation& dst);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism add(const Morphism& f, const Morphism& g);
Morphism scale(const Morphism& f, const Rat& s);

/// Offsets of each part inside a direct sum, per vertex.
struct SumLayout {
    std::vector<DimVector> offsets;  // offsets[part][vertex]
    static SumLayout of(const std::vector<Representation>& parts, const Quiver& q);
};

/// Basis bookkeeping for the path bases used by projective_rep/injective_rep:
/// per vertex l, the basis index of each arrow sequence. Projective: paths
/// v ~> l; injective: paths l ~> v. The trivial path has index 0 at l == v.
using PathBasis = std::vector<std::map<std::vector<int>, int>>;
PathBasis projective_path_basis(const Quiver& q, int v);
PathBasis injective_path_basis(const Quiver& q, int v);

}  // namespace tautilt
