#pragma once

#include <vector>

#include "tautilt/rep.hpp"

namespace tautilt {

/// Basis of Hom(M, N): solutions of the commuting-square linear system.
std::vector<Morphism> hom_basis(const Representation& m, const Representation& n);
long long hom_dim(const Representation& m, const Representation& n);

/// Dimension vector of rad M (images of incoming arrow maps) and of M/rad M.
DimVector radical_dims(const Representation& m);
DimVector top_dims(const Representation& m);

/// Minimal projective presentation 0 -> P1 -> P0 -> M -> 0 (exact on the left
/// because path algebras of acyclic quivers are hereditary). P0 is built from
/// the top of M, P1 from the top of the kernel.
struct MinPresentation {
    std::vector<int> p0_vertices;  // summand vertex per copy of P0, in order
    std::vector<int> p1_vertices;
    Representation p0, p1;
    Morphism map;    // P1 -> P0
    Morphism cover;  // P0 -> M
};
MinPresentation min_projective_presentation(const Representation& m);

/// Auslander-Reiten translate via the Nakayama functor on the minimal
/// presentation: tau M = ker(nu P1 -> nu P0). Kills projective summands.
Representation tau(const Representation& m);
/// Inverse translate computed as D tau D over the opposite quiver.
Representation tau_inverse(const Representation& m);

/// dim Ext^1(M,N) = dim Hom(M,N) - <dim M, dim N> (hereditary shortcut).
long long ext1_dim(const Representation& m, const Representation& n);
/// Same value via coker(Hom(P0,N) -> Hom(P1,N)); the two must agree.
long long ext1_dim_presentation(const Representation& m, const Representation& n);

struct KernelData {
    Representation rep;
    Morphism incl;
};
struct CokernelData {
    Representation rep;
    Morphism proj;
};
struct PushoutData {
    Representation rep;
    Morphism from_target;  // Y -> P for f: X -> Y
    Morphism from_other;   // Z -> P for g: X -> Z
};
KernelData kernel_of(const Morphism& f);
CokernelData cokernel_of(const Morphism& f);
PushoutData pushout_of(const Morphism& f, const Morphism& g);

struct ShortExactSequence {
    Morphism f;  // X -> E, injective
    Morphism g;  // E -> Y, surjective
};
bool ses_ok(const ShortExactSequence& s);

/// Middle term of the universal sequence 0 -> N -> E -> M^s -> 0 realizing a
/// basis of Ext^1(M, N); s must equal dim Ext^1(M, N).
struct UniversalExtension {
    Representation middle;
    ShortExactSequence seq;
    int s = 0;
};
UniversalExtension universal_extension_middle(const Representation& m, const Representation& n, int s);

/// Trace of T in X: per-vertex dimension of the sum of images of all T -> X.
DimVector trace_dims(const Representation& t, const Representation& x);
/// X lies in Fac T, i.e. some T^m surjects onto X.
bool fac_contains(const Representation& t, const Representation& x);

/// Zero annihilator, solved over the path basis of the algebra.
bool is_faithful(const Representation& m);
bool is_sincere(const Representation& m);

/// Morphism from a sum of standard projectives determined by generator images.
Morphism morphism_from_generator_images(const Representation& proj_sum, const std::vector<int>& vertices,
                                        const Representation& target, const RatMatrix& images_flat);

}  // namespace tautilt
