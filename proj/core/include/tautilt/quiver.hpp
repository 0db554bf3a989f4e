#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tautilt/ratmat.hpp"

namespace tautilt {

using DimVector = std::vector<long long>;

struct Arrow {
    std::string label;
    int src = 0;
    int dst = 0;
};

/// Directed path in a quiver, stored as the arrow sequence from src to dst.
/// Trivial paths (src == dst, no arrows) are included wherever paths are listed.
struct Path {
    int src = 0;
    int dst = 0;
    std::vector<int> arrows;
};

/// Finite acyclic quiver. Vertices are addressed by index; the textual ids from
/// the DSL are kept for I/O. Immutable after construction.
class Quiver {
  public:
    Quiver(std::string name, std::vector<std::string> vertex_ids, std::vector<Arrow> arrows);

    const std::string& name() const { return name_; }
    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
    int vertex_index(const std::string& id) const;

    /// Topological order with sinks first: every arrow s->t has order[t] < order[s].
    const std::vector<int>& sink_first_order() const { return sink_first_order_; }

    /// All paths grouped per source vertex, trivial path first, then DFS order.
    const std::vector<Path>& paths_from(int v) const { return paths_from_[v]; }
    /// Flat list of every path.
    std::vector<Path> all_paths() const;
    /// Paths from src to dst (possibly empty; contains the trivial path iff src == dst).
    std::vector<Path> paths_between(int src, int dst) const;

    Quiver opposite() const;

    static Quiver parse(const std::string& text);
    static Quiver preset(const std::string& name);
    static std::vector<std::string> preset_names();

  private:
    std::string name_;
    std::vector<std::string> vertex_ids_;
    std::vector<Arrow> arrows_;
    std::vector<int> sink_first_order_;
    std::vector<std::vector<Path>> paths_from_;

    void validate_and_index();
};

/// Square integer matrix indexed by quiver vertices.
struct IntMatrix {
    int n = 0;
    std::vector<long long> a;

    IntMatrix() = default;
    explicit IntMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
    long long& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    long long at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
    bool operator==(const IntMatrix& o) const { return n == o.n && a == o.a; }
    DimVector apply(const DimVector& v) const;
    RatMatrix to_rational() const;
};

/// Row i is dim P_i, i.e. entry (i,j) counts paths from i to j.
IntMatrix cartan_matrix(const Quiver& q);

/// Coxeter matrix, pinned by Phi * dim P_i = -dim I_i.
IntMatrix coxeter_matrix(const Quiver& q);
IntMatrix coxeter_inverse(const Quiver& q);

/// Hereditary Euler form <d,e> = sum d_i e_i - sum over arrows a:i->j of d_i e_j.
long long euler_form(const Quiver& q, const DimVector& d, const DimVector& e);

DimVector dim_projective(const Quiver& q, int v);
DimVector dim_injective(const Quiver& q, int v);

enum class DynkinType { A, D, E };

struct DynkinClass {
    DynkinType type;
    int rank;
    std::string to_string() const;
};

/// Classify the underlying graph; nullopt when not a simply laced Dynkin tree.
std::optional<DynkinClass> classify_dynkin(const Quiver& q);

/// Positive roots of the preset quiver of the given type/rank, in that preset's
/// vertex numbering.
std::vector<DimVector> positive_roots(DynkinType type, int rank);

/// Positive roots computed on an arbitrary Dynkin quiver's own vertex numbering.
std::vector<DimVector> positive_roots_of(const Quiver& q);

long long expected_root_count(DynkinType type, int rank);

}  // namespace tautilt
