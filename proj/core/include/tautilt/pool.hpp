#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tautilt/homalg.hpp"
#include "tautilt/rep.hpp"

namespace tautilt {

enum class Component { Preprojective, Preinjective };

/// Canonicalized indecomposable: dimension vector is the identity (valid in
/// scope: everything produced is exceptional), the stored representation is
/// one concrete model.
struct IndecModule {
    DimVector dim;
    Representation rep;
    Component component = Component::Preprojective;
    int orbit_vertex = 0;  // base projective/injective of the tau-orbit
    int orbit_level = 0;   // tau^{-level} P_v, respectively tau^{level} I_v
    bool is_projective = false;
    bool is_injective = false;
    int injective_vertex = -1;  // which I_j this is, when injective
    std::string label;
};

/// Pool of indecomposables with the pairwise Hom / Ext^1 / Hom(-, tau -)
/// dimension tables. Ordering is Hom-unitriangular: preprojectives by
/// tau^- level, then preinjectives by reverse tau level.
class IndecPool {
  public:
    QuiverPtr quiver;
    std::vector<IndecModule> modules;
    bool exhaustive = false;
    int depth = 0;

    IntMatrix phi, phi_inv;
    std::vector<int> preproj_orbit_len;  // per vertex; -1 when unbounded

    std::vector<std::vector<long long>> hom, ext, hom_tau;

    int size() const { return static_cast<int>(modules.size()); }
    int index_of(const DimVector& d) const;  // -1 when absent
    /// Index of tau X_i in the pool: -2 when tau kills it, -1 when it falls
    /// outside a bounded pool.
    int tau_index(int i) const;
    int tau_inverse_index(int i) const;

    std::string describe(int i) const;
};

/// Enumerate the pool: full for representation-finite (Dynkin) quivers, the
/// preprojective and preinjective tau-orbits to the given depth for the
/// Kronecker-type presets (K2, W2m, W4). Refuses anything else.
IndecPool enumerate_indecomposables(QuiverPtr q, int depth = 0, int workers = 1);

/// Krull-Schmidt multiplicities of M against the pool, via the unitriangular
/// Hom-dimension system. Throws PoolError when M has summands outside.
std::vector<std::pair<int, int>> decompose(const Representation& m, const IndecPool& pool);

Representation direct_sum_of(const IndecPool& pool, const std::vector<std::pair<int, int>>& multiset);
Representation direct_sum_of(const IndecPool& pool, const std::vector<int>& indices);

std::string dim_to_string(const DimVector& d);

}  // namespace tautilt
