#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tautilt/pool.hpp"

namespace tautilt {

/// Small fixed-width bitset over pool indices.
struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(int nbits = 0) : w((nbits + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] &= o.w[k];
        return *this;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] & ~o.w[k]) return false;
        return true;
    }
    bool operator==(const Bits& o) const { return w == o.w; }
    int count() const;
    static Bits all(int nbits);
};

/// Support tau-tilting pair: module summands as sorted pool indices plus the
/// sorted support-projective vertex set. |modules| + |support| = n.
struct Pair {
    std::vector<int> modules;
    std::vector<int> support;

    bool operator==(const Pair& o) const { return modules == o.modules && support == o.support; }
    bool operator<(const Pair& o) const;  // index-lexicographic; engine sorts canonically by dims
};

struct ExchangeSequenceRecord {
    enum class Direction { Left, Right };
    Direction direction = Direction::Left;
    bool at_support = false;   // mutated position was a support vertex
    int removed_module = -1;   // position, when a module summand
    int removed_support = -1;  // position, when a support vertex

    // Exchange data, always oriented from the Fac-larger pair: the sequence
    // X -> U' -> Y -> 0 with f a minimal left add(U)-approximation.
    int left_removed = -1;                             // X
    std::vector<std::pair<int, int>> approx_target;    // U' multiplicities
    std::vector<std::pair<int, int>> cokernel;         // Y decomposition
    bool y_zero = false;                               // non-sincere case: Y = 0
    Pair result;
};

struct MQEdge {
    int from = 0, to = 0;
    std::string label;  // module summand leaving the arrow source
};

struct MutationQuiver {
    std::shared_ptr<const IndecPool> pool;
    std::vector<Pair> vertices;
    std::vector<MQEdge> edges;
    std::vector<char> is_tau_tilting, is_tilting, boundary;
    bool exhaustive = false;

    int index_of(const Pair& p) const;
    std::vector<std::vector<int>> out_adjacency() const;
    std::vector<std::vector<int>> in_adjacency() const;
};

struct SaturationRow {
    int vertex = 0;  // index into the tilting subquiver's host graph
    int starting = 0, ending = 0;
    bool saturated = false;
    bool dim_criterion = false;  // all coordinates of dim T >= 2
    bool indeterminate = false;  // boundary vertex of a bounded exploration
};

struct ComponentSummary {
    int vertices = 0;
    int non_saturated = 0;
    int indeterminate = 0;
};

struct ComplementsResult {
    std::vector<int> complements;  // pool indices making M u {X} tilting
    int bongartz = -1;             // the one whose completion has Fac = perp(tau M)
    bool faithful = false;
};

struct ApproximationResult {
    Morphism map;
    std::vector<std::pair<int, int>> multiplicities;
    bool approximation_ok = false;
    bool multiplicities_minimal = false;  // equal to the top-formula values
    bool endo_ok = false;                 // id + (t : tf = 0) basis elements invertible
};

struct ExchangeResult {
    int x = -1, y = -1;
    ShortExactSequence seq;  // 0 -> X -> M' -> Y -> 0
    std::vector<std::pair<int, int>> middle;
    bool nonsplit = false;
    bool f_minimal_left = false;
    bool g_minimal_right = false;
    bool disjoint_from_cokernel = false;  // add M' and add Y share no summand
};

/// Operations on support tau-tilting pairs over a fixed pool. Pure; safe to
/// share across threads.
class Engine {
  public:
    explicit Engine(std::shared_ptr<const IndecPool> pool);

    const IndecPool& pool() const { return *pool_; }
    std::shared_ptr<const IndecPool> pool_ptr() const { return pool_; }
    int n() const { return n_; }

    bool compatible(int i, int j) const;  // Hom(Xi, tau Xj) = 0 = Hom(Xj, tau Xi)

    bool is_tau_rigid_pair(const std::vector<int>& modules, const std::vector<int>& support) const;
    bool is_support_tau_tilting(const Pair& p) const;

    /// All support tau-tilting pairs (requires an exhaustive pool).
    std::vector<Pair> enumerate_pairs() const;
    /// All tau-rigid subsets of the pool (cliques of the compatibility graph).
    std::vector<std::vector<int>> enumerate_rigid_sets() const;

    Pair projectives_pair() const;  // (A, {})
    Pair zero_pair() const;         // (0, all vertices)

    Pair bongartz_completion_torsion(const std::vector<int>& modules) const;
    Pair bongartz_completion_extension(const std::vector<int>& modules) const;

    /// Zero annihilator for the direct sum of the given pool members. Tree
    /// quivers use precomputed per-summand path actions; multi-arrow quivers
    /// fall back to the full annihilator system.
    bool module_set_faithful(const std::vector<int>& modules) const;

    ComplementsResult complements_of_almost_complete(const std::vector<int>& modules) const;

    ApproximationResult minimal_left_approximation(int x, const std::vector<int>& targets) const;
    ExchangeResult exchange_sequence(int x, int y, const std::vector<int>& modules) const;

    std::vector<int> ext_projectives_of_fac(const std::vector<int>& t_modules) const;

    /// Fac(M,P) as a pool bitset via perp(tau M) and P-perp.
    Bits fac_bits(const Pair& p) const;
    /// Same set by honest trace computations (slow; used as an oracle).
    Bits fac_bits_trace(const Pair& p) const;

    struct MutationStep {
        Pair result;
        ExchangeSequenceRecord record;
    };
    /// Mutate at a module summand (pool index) or support vertex.
    MutationStep mutate_at_module(const Pair& p, int module_index) const;
    MutationStep mutate_at_support(const Pair& p, int vertex) const;

    struct BuildOptions {
        bool honest_faithful = true;  // certify tilting flags by annihilator
        int workers = 1;
    };
    MutationQuiver build_mutation_quiver(const BuildOptions& opt = {}) const;
    MutationQuiver build_mutation_quiver_bfs(int depth, const BuildOptions& opt = {}) const;

    MutationQuiver tilting_subquiver(const MutationQuiver& mq) const;
    std::vector<SaturationRow> saturation_report(const MutationQuiver& mq) const;
    std::vector<ComponentSummary> component_analysis(const MutationQuiver& tilting) const;

    /// Hasse edges of the Fac-inclusion poset on the given vertices.
    std::vector<MQEdge> hasse_edges(const std::vector<Pair>& vertices) const;

    bool pair_less(const Pair& a, const Pair& b) const;  // canonical dim-lex order
    std::string pair_id(const Pair& p) const;
    std::string edge_label(const Pair& from, const Pair& to) const;

    Representation pair_module(const Pair& p) const { return direct_sum_of(*pool_, p.modules); }

  private:
    std::shared_ptr<const IndecPool> pool_;
    int n_ = 0;
    int words_ = 0;
    std::vector<Bits> adj_;        // compatibility graph
    std::vector<Bits> perp_tau_;   // B_j = { i : Hom(X_i, tau X_j) = 0 }
    std::vector<Bits> vanish_at_;  // V_v = { i : (dim X_i)_v = 0 }
    std::vector<std::uint64_t> supp_mask_;  // vertex support per module (n <= 64)

    std::optional<Pair> other_completion(const std::vector<int>& modules, const std::vector<int>& support,
                                         const Pair& self) const;
    ExchangeSequenceRecord build_record(const Pair& larger, int removed_module, const Pair& smaller) const;
    void clique_walk(const std::function<void(const std::vector<int>&, std::uint64_t)>& emit) const;
};

}  // namespace tautilt
