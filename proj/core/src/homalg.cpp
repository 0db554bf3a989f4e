#include "tautilt/homalg.hpp"

#include <algorithm>
#include <tuple>

#include "tautilt/errors.hpp"

namespace tautilt {

namespace {

// Variable layout for the commuting-square system: one block per vertex,
// entry (r, c) of block v at base[v] + r * dim(M_v) + c.
struct HomSystem {
    std::vector<std::size_t> base;
    std::size_t vars = 0;
    RatMatrix eqs;
};

HomSystem hom_system(const Representation& m, const Representation& n) {
    const Quiver& q = *m.quiver;
    HomSystem sys;
    sys.base.resize(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) {
        sys.base[v] = sys.vars;
        sys.vars += static_cast<std::size_t>(n.dims[v]) * m.dims[v];
    }
    std::size_t rows = 0;
    for (const auto& a : q.arrows()) rows += static_cast<std::size_t>(n.dims[a.dst]) * m.dims[a.src];
    sys.eqs = RatMatrix(rows, sys.vars);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const Arrow& a = q.arrows()[ai];
        const RatMatrix& ma = m.arrow_maps[ai];
        const RatMatrix& na = n.arrow_maps[ai];
        // (phi_t * M_a - N_a * phi_s)[i][j] = 0
        for (long long i = 0; i < n.dims[a.dst]; ++i)
            for (long long j = 0; j < m.dims[a.src]; ++j) {
                for (long long k = 0; k < m.dims[a.dst]; ++k)
                    if (ma.at(k, j) != 0) sys.eqs.at(row, sys.base[a.dst] + i * m.dims[a.dst] + k) += ma.at(k, j);
                for (long long k = 0; k < n.dims[a.src]; ++k)
                    if (na.at(i, k) != 0) sys.eqs.at(row, sys.base[a.src] + k * m.dims[a.src] + j) -= na.at(i, k);
                ++row;
            }
    }
    return sys;
}

}  // namespace

std::vector<Morphism> hom_basis(const Representation& m, const Representation& n) {
    if (m.quiver->vertex_count() != n.quiver->vertex_count() ||
        m.quiver->arrows().size() != n.quiver->arrows().size())
        throw UsageError("hom_basis: representations over different quivers");
    HomSystem sys = hom_system(m, n);
    RatMatrix k = sys.eqs.kernel_basis();
    std::vector<Morphism> basis;
    for (std::size_t col = 0; col < k.cols(); ++col) {
        std::vector<RatMatrix> blocks;
        for (int v = 0; v < m.vertex_count(); ++v) {
            RatMatrix b(n.dims[v], m.dims[v]);
            for (long long r = 0; r < n.dims[v]; ++r)
                for (long long c = 0; c < m.dims[v]; ++c) b.at(r, c) = k.at(sys.base[v] + r * m.dims[v] + c, col);
            blocks.push_back(std::move(b));
        }
        basis.push_back(Morphism{m, n, std::move(blocks)});
    }
    return basis;
}

long long hom_dim(const Representation& m, const Representation& n) {
    HomSystem sys = hom_system(m, n);
    return static_cast<long long>(sys.vars - sys.eqs.rank());
}

DimVector radical_dims(const Representation& m) {
    const Quiver& q = *m.quiver;
    DimVector rad(q.vertex_count(), 0);
    for (int v = 0; v < q.vertex_count(); ++v) {
        RatMatrix stack(m.dims[v], 0);
        for (std::size_t ai = 0; ai < q.arrows().size(); ++ai)
            if (q.arrows()[ai].dst == v) stack = hstack(stack, m.arrow_maps[ai]);
        rad[v] = static_cast<long long>(stack.rank());
    }
    return rad;
}

DimVector top_dims(const Representation& m) {
    DimVector rad = radical_dims(m);
    DimVector top(m.dims);
    for (std::size_t v = 0; v < top.size(); ++v) top[v] -= rad[v];
    return top;
}

Morphism morphism_from_generator_images(const Representation& proj_sum, const std::vector<int>& vertices,
                                        const Representation& target, const RatMatrix& images_flat) {
    const Quiver& q = *target.quiver;
    // images_flat is one column; rows are the concatenated generator images.
    std::vector<RatMatrix> blocks;
    for (int l = 0; l < q.vertex_count(); ++l) blocks.emplace_back(target.dims[l], proj_sum.dims[l]);
    std::vector<long long> col_offset(q.vertex_count(), 0);
    std::size_t img_row = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        int v = vertices[k];
        std::vector<Rat> y(target.dims[v]);
        for (long long r = 0; r < target.dims[v]; ++r) y[r] = images_flat.at(img_row + r, 0);
        img_row += target.dims[v];
        PathBasis pb = projective_path_basis(q, v);
        for (int l = 0; l < q.vertex_count(); ++l) {
            for (const auto& [seq, idx] : pb[l]) {
                RatMatrix act = path_action(target, Path{v, l, seq});
                std::vector<Rat> img = act.apply(y);
                for (long long r = 0; r < target.dims[l]; ++r) blocks[l].at(r, col_offset[l] + idx) = img[r];
            }
            col_offset[l] += static_cast<long long>(pb[l].size());
        }
    }
    return Morphism{proj_sum, target, std::move(blocks)};
}

namespace {

struct ProjSum {
    std::vector<int> vertices;
    Representation rep;
    SumLayout layout;
};

ProjSum build_proj_sum(QuiverPtr q, const std::vector<int>& vertices) {
    ProjSum ps;
    ps.vertices = vertices;
    std::vector<Representation> parts;
    for (int v : vertices) parts.push_back(projective_rep(q, v));
    ps.rep = parts.empty() ? zero_rep(q) : direct_sum(parts);
    ps.layout = parts.empty() ? SumLayout{} : SumLayout::of(parts, *q);
    return ps;
}

// Top lift coordinates: standard basis columns completing rad M_v to M_v.
std::vector<std::vector<long long>> top_lift_indices(const Representation& m) {
    const Quiver& q = *m.quiver;
    std::vector<std::vector<long long>> lifts(q.vertex_count());
    for (int v = 0; v < q.vertex_count(); ++v) {
        RatMatrix stack(m.dims[v], 0);
        for (std::size_t ai = 0; ai < q.arrows().size(); ++ai)
            if (q.arrows()[ai].dst == v) stack = hstack(stack, m.arrow_maps[ai]);
        std::vector<std::size_t> pivots = stack.transpose().rref_pivot_columns();
        std::vector<bool> is_pivot(m.dims[v], false);
        for (std::size_t p : pivots) is_pivot[p] = true;
        for (long long r = 0; r < m.dims[v]; ++r)
            if (!is_pivot[r]) lifts[v].push_back(r);
    }
    return lifts;
}

// Cover of M from the standard projectives on its top, with chosen lifts.
std::pair<ProjSum, Morphism> projective_cover(const Representation& m) {
    const Quiver& q = *m.quiver;
    std::vector<std::vector<long long>> lifts = top_lift_indices(m);
    std::vector<int> vertices;
    long long img_rows = 0;
    for (int v = 0; v < q.vertex_count(); ++v)
        for (std::size_t c = 0; c < lifts[v].size(); ++c) {
            vertices.push_back(v);
            img_rows += m.dims[v];
        }
    ProjSum ps = build_proj_sum(m.quiver, vertices);
    RatMatrix images(img_rows, 1);
    {
        long long row = 0;
        for (int v = 0; v < q.vertex_count(); ++v)
            for (long long idx : lifts[v]) {
                images.at(row + idx, 0) = 1;
                row += m.dims[v];
            }
    }
    Morphism cover = vertices.empty() ? zero_morphism(ps.rep, m)
                                      : morphism_from_generator_images(ps.rep, vertices, m, images);
    for (int v = 0; v < q.vertex_count(); ++v)
        if (static_cast<long long>(cover.blocks[v].rank()) != m.dims[v])
            throw InternalError("projective cover is not surjective");
    return {std::move(ps), std::move(cover)};
}

}  // namespace

MinPresentation min_projective_presentation(const Representation& m) {
    auto [p0, cover] = projective_cover(m);
    KernelData k = kernel_of(cover);
    auto [p1, kcover] = projective_cover(k.rep);
    // The cover of a projective kernel is an isomorphism (hereditary).
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (p1.rep.dims[v] != k.rep.dims[v]) throw InternalError("presentation kernel is not projective");
        if (static_cast<long long>(kcover.blocks[v].rank()) != k.rep.dims[v])
            throw InternalError("kernel cover is not bijective");
    }
    MinPresentation pres;
    pres.p0_vertices = p0.vertices;
    pres.p1_vertices = p1.vertices;
    pres.p0 = p0.rep;
    pres.p1 = p1.rep;
    pres.map = compose(k.incl, kcover);
    pres.cover = cover;
    return pres;
}

namespace {

// Path-coefficient form of a map between standard projective sums: for each
// source summand, the list of (target summand, path, coefficient).
std::vector<std::vector<std::tuple<int, Path, Rat>>> extract_path_coeffs(const MinPresentation& pres) {
    const Quiver& q = *pres.p0.quiver;
    std::vector<Representation> p1_parts, p0_parts;
    for (int v : pres.p1_vertices) p1_parts.push_back(projective_rep(pres.p0.quiver, v));
    for (int v : pres.p0_vertices) p0_parts.push_back(projective_rep(pres.p0.quiver, v));
    SumLayout lay1 = SumLayout::of(p1_parts, q);
    SumLayout lay0 = SumLayout::of(p0_parts, q);

    // Per target summand, the inverse path index at each vertex.
    std::vector<PathBasis> p0_bases;
    for (int v : pres.p0_vertices) p0_bases.push_back(projective_path_basis(q, v));

    std::vector<std::vector<std::tuple<int, Path, Rat>>> out(pres.p1_vertices.size());
    for (std::size_t alpha = 0; alpha < pres.p1_vertices.size(); ++alpha) {
        int u = pres.p1_vertices[alpha];
        long long gen_col = lay1.offsets[alpha][u];  // trivial path has index 0
        for (std::size_t beta = 0; beta < pres.p0_vertices.size(); ++beta) {
            for (const auto& [seq, idx] : p0_bases[beta][u]) {
                const Rat& c = pres.map.blocks[u].at(lay0.offsets[beta][u] + idx, gen_col);
                if (c != 0) out[alpha].push_back({static_cast<int>(beta), Path{pres.p0_vertices[beta], u, seq}, c});
            }
        }
    }
    return out;
}

// nu(h_rho) for rho: w ~> u, as the suffix-strip map I_u -> I_w.
void add_nu_block(std::vector<RatMatrix>& blocks, const Quiver& q, const Path& rho, const Rat& coeff,
                  const PathBasis& basis_u, const PathBasis& basis_w, const std::vector<long long>& row_off,
                  const std::vector<long long>& col_off) {
    for (int l = 0; l < q.vertex_count(); ++l) {
        for (const auto& [seq, idx] : basis_u[l]) {
            if (seq.size() < rho.arrows.size()) continue;
            std::size_t cut = seq.size() - rho.arrows.size();
            if (!std::equal(seq.begin() + cut, seq.end(), rho.arrows.begin())) continue;
            std::vector<int> prefix(seq.begin(), seq.begin() + cut);
            auto it = basis_w[l].find(prefix);
            if (it == basis_w[l].end()) throw InternalError("path prefix missing from injective basis");
            blocks[l].at(row_off[l] + it->second, col_off[l] + idx) += coeff;
        }
    }
}

}  // namespace

Representation tau(const Representation& m) {
    QuiverPtr q = m.quiver;
    if (m.is_zero()) return zero_rep(q);
    MinPresentation pres = min_projective_presentation(m);
    if (pres.p1_vertices.empty()) return zero_rep(q);  // projective module

    std::vector<Representation> inj1, inj0;
    for (int v : pres.p1_vertices) inj1.push_back(injective_rep(q, v));
    for (int v : pres.p0_vertices) inj0.push_back(injective_rep(q, v));
    Representation nu_p1 = direct_sum(inj1);
    Representation nu_p0 = inj0.empty() ? zero_rep(q) : direct_sum(inj0);
    SumLayout lay1 = SumLayout::of(inj1, *q);
    SumLayout lay0 = inj0.empty() ? SumLayout{} : SumLayout::of(inj0, *q);

    std::vector<PathBasis> inj_basis1, inj_basis0;
    for (int v : pres.p1_vertices) inj_basis1.push_back(injective_path_basis(*q, v));
    for (int v : pres.p0_vertices) inj_basis0.push_back(injective_path_basis(*q, v));

    std::vector<RatMatrix> blocks;
    for (int l = 0; l < q->vertex_count(); ++l) blocks.emplace_back(nu_p0.dims[l], nu_p1.dims[l]);

    auto coeffs = extract_path_coeffs(pres);
    for (std::size_t alpha = 0; alpha < coeffs.size(); ++alpha) {
        std::vector<long long> col_off(q->vertex_count());
        for (int l = 0; l < q->vertex_count(); ++l) col_off[l] = lay1.offsets[alpha][l];
        for (const auto& [beta, rho, c] : coeffs[alpha]) {
            std::vector<long long> row_off(q->vertex_count());
            for (int l = 0; l < q->vertex_count(); ++l) row_off[l] = lay0.offsets[beta][l];
            add_nu_block(blocks, *q, rho, c, inj_basis1[alpha], inj_basis0[beta], row_off, col_off);
        }
    }
    Morphism nu_map{nu_p1, nu_p0, std::move(blocks)};
    if (!morphism_ok(nu_map)) throw InternalError("Nakayama image is not a morphism");
    return kernel_of(nu_map).rep;
}

Representation tau_inverse(const Representation& m) {
    QuiverPtr opp = std::make_shared<Quiver>(m.quiver->opposite());
    Representation dm = dual_rep(opp, m);
    Representation t = tau(dm);
    return dual_rep(m.quiver, t);
}

long long ext1_dim(const Representation& m, const Representation& n) {
    return hom_dim(m, n) - euler_form(*m.quiver, m.dims, n.dims);
}

long long ext1_dim_presentation(const Representation& m, const Representation& n) {
    if (m.is_zero()) return 0;
    MinPresentation pres = min_projective_presentation(m);
    if (pres.p1_vertices.empty()) return 0;
    auto coeffs = extract_path_coeffs(pres);

    std::vector<long long> row_base(pres.p1_vertices.size() + 1, 0);
    for (std::size_t a = 0; a < pres.p1_vertices.size(); ++a)
        row_base[a + 1] = row_base[a] + n.dims[pres.p1_vertices[a]];
    std::vector<long long> col_base(pres.p0_vertices.size() + 1, 0);
    for (std::size_t b = 0; b < pres.p0_vertices.size(); ++b)
        col_base[b + 1] = col_base[b] + n.dims[pres.p0_vertices[b]];

    RatMatrix psi(row_base.back(), col_base.back());
    for (std::size_t alpha = 0; alpha < coeffs.size(); ++alpha)
        for (const auto& [beta, rho, c] : coeffs[alpha]) {
            RatMatrix act = path_action(n, rho);  // N_w -> N_u
            for (std::size_t r = 0; r < act.rows(); ++r)
                for (std::size_t cc = 0; cc < act.cols(); ++cc)
                    psi.at(row_base[alpha] + r, col_base[beta] + cc) += c * act.at(r, cc);
        }
    return row_base.back() - static_cast<long long>(psi.rank());
}

KernelData kernel_of(const Morphism& f) {
    const Quiver& q = *f.source.quiver;
    std::vector<RatMatrix> kb;
    DimVector dims(q.vertex_count(), 0);
    for (int v = 0; v < q.vertex_count(); ++v) {
        kb.push_back(f.blocks[v].kernel_basis());
        dims[v] = static_cast<long long>(kb[v].cols());
    }
    std::vector<RatMatrix> maps;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const Arrow& a = q.arrows()[ai];
        bool ok = true;
        RatMatrix x = kb[a.dst].solve_matrix(f.source.arrow_maps[ai] * kb[a.src], ok);
        if (!ok) throw InternalError("kernel is not arrow-stable");
        maps.push_back(std::move(x));
    }
    Representation rep(f.source.quiver, dims, std::move(maps));
    return KernelData{rep, Morphism{rep, f.source, kb}};
}

CokernelData cokernel_of(const Morphism& f) {
    const Quiver& q = *f.target.quiver;
    std::vector<RatMatrix> qs;
    DimVector dims(q.vertex_count(), 0);
    for (int v = 0; v < q.vertex_count(); ++v) {
        qs.push_back(f.blocks[v].cokernel_projection());
        dims[v] = static_cast<long long>(qs[v].rows());
    }
    std::vector<RatMatrix> maps;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const Arrow& a = q.arrows()[ai];
        // Solve C_a * q_s = q_t * N_a; q_s is surjective so this is solvable.
        bool ok = true;
        RatMatrix ct = qs[a.src].transpose().solve_matrix((qs[a.dst] * f.target.arrow_maps[ai]).transpose(), ok);
        if (!ok) throw InternalError("cokernel arrow map inconsistent");
        maps.push_back(ct.transpose());
    }
    Representation rep(f.target.quiver, dims, std::move(maps));
    return CokernelData{rep, Morphism{f.target, rep, qs}};
}

PushoutData pushout_of(const Morphism& f, const Morphism& g) {
    const Quiver& q = *f.source.quiver;
    Representation yz = direct_sum({f.target, g.target});
    std::vector<RatMatrix> blocks;
    for (int v = 0; v < q.vertex_count(); ++v) blocks.push_back(vstack(f.blocks[v], g.blocks[v].scaled(-1)));
    Morphism into{f.source, yz, std::move(blocks)};
    CokernelData c = cokernel_of(into);
    std::vector<RatMatrix> iy, iz;
    for (int v = 0; v < q.vertex_count(); ++v) {
        RatMatrix a(yz.dims[v], f.target.dims[v]);
        RatMatrix b(yz.dims[v], g.target.dims[v]);
        for (long long r = 0; r < f.target.dims[v]; ++r) a.at(r, r) = 1;
        for (long long r = 0; r < g.target.dims[v]; ++r) b.at(f.target.dims[v] + r, r) = 1;
        iy.push_back(std::move(a));
        iz.push_back(std::move(b));
    }
    return PushoutData{c.rep, compose(c.proj, Morphism{f.target, yz, iy}),
                       compose(c.proj, Morphism{g.target, yz, iz})};
}

bool ses_ok(const ShortExactSequence& s) {
    if (!morphism_ok(s.f) || !morphism_ok(s.g)) return false;
    for (int v = 0; v < s.f.source.vertex_count(); ++v) {
        if (static_cast<long long>(s.f.blocks[v].rank()) != s.f.source.dims[v]) return false;
        if (static_cast<long long>(s.g.blocks[v].rank()) != s.g.target.dims[v]) return false;
        if (s.f.target.dims[v] != s.f.source.dims[v] + s.g.target.dims[v]) return false;
    }
    return compose(s.g, s.f).is_zero();
}

UniversalExtension universal_extension_middle(const Representation& m, const Representation& n, int s) {
    long long expected = ext1_dim(m, n);
    if (s != expected)
        throw UsageError("universal extension: s must be dim Ext^1(M,N) = " + std::to_string(expected));
    QuiverPtr q = m.quiver;
    if (s == 0) {
        ShortExactSequence seq{identity_morphism(n), zero_morphism(n, zero_rep(q))};
        return UniversalExtension{n, seq, 0};
    }
    MinPresentation pres = min_projective_presentation(m);
    auto coeffs = extract_path_coeffs(pres);

    // Image of Hom(P0, N) -> Hom(P1, N) in generator-image coordinates.
    std::vector<long long> row_base(pres.p1_vertices.size() + 1, 0);
    for (std::size_t a = 0; a < pres.p1_vertices.size(); ++a)
        row_base[a + 1] = row_base[a] + n.dims[pres.p1_vertices[a]];
    std::vector<long long> col_base(pres.p0_vertices.size() + 1, 0);
    for (std::size_t b = 0; b < pres.p0_vertices.size(); ++b)
        col_base[b + 1] = col_base[b] + n.dims[pres.p0_vertices[b]];
    RatMatrix psi(row_base.back(), col_base.back());
    for (std::size_t alpha = 0; alpha < coeffs.size(); ++alpha)
        for (const auto& [beta, rho, c] : coeffs[alpha]) {
            RatMatrix act = path_action(n, rho);
            for (std::size_t r = 0; r < act.rows(); ++r)
                for (std::size_t cc = 0; cc < act.cols(); ++cc)
                    psi.at(row_base[alpha] + r, col_base[beta] + cc) += c * act.at(r, cc);
        }

    // Representatives of an Ext^1 basis: coordinates completing im(psi).
    std::vector<std::size_t> pivots = psi.transpose().rref_pivot_columns();
    std::vector<bool> is_pivot(row_base.back(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<Morphism> handles;
    for (long long r = 0; r < row_base.back(); ++r) {
        if (is_pivot[r]) continue;
        RatMatrix img(row_base.back(), 1);
        img.at(r, 0) = 1;
        handles.push_back(morphism_from_generator_images(pres.p1, pres.p1_vertices, n, img));
    }
    if (static_cast<int>(handles.size()) != s) throw InternalError("Ext basis size mismatch");

    // q : P1^s -> P0^s + N,  x |-> (p x, ..., p x, -(h_1 x + ... applied per copy)).
    std::vector<Representation> p1_copies(s, pres.p1), p0_copies(s, pres.p0);
    Representation p1s = direct_sum(p1_copies);
    std::vector<Representation> target_parts = p0_copies;
    target_parts.push_back(n);
    Representation p0s_n = direct_sum(target_parts);

    std::vector<RatMatrix> qblocks;
    for (int v = 0; v < q->vertex_count(); ++v) {
        std::vector<RatMatrix> diag(s, pres.map.blocks[v]);
        RatMatrix top = diag_block(diag);
        RatMatrix bottom(n.dims[v], p1s.dims[v]);
        long long off = 0;
        for (int copy = 0; copy < s; ++copy) {
            const RatMatrix& h = handles[copy].blocks[v];
            for (std::size_t r = 0; r < h.rows(); ++r)
                for (std::size_t c = 0; c < h.cols(); ++c) bottom.at(r, off + c) = -h.at(r, c);
            off += pres.p1.dims[v];
        }
        qblocks.push_back(vstack(top, bottom));
    }
    Morphism qmap{p1s, p0s_n, std::move(qblocks)};
    if (!morphism_ok(qmap)) throw InternalError("universal extension map is not a morphism");
    CokernelData ck = cokernel_of(qmap);

    // N -> E through the inclusion into the stacked target.
    std::vector<RatMatrix> incl_blocks;
    for (int v = 0; v < q->vertex_count(); ++v) {
        RatMatrix b(p0s_n.dims[v], n.dims[v]);
        long long base = p0s_n.dims[v] - n.dims[v];
        for (long long r = 0; r < n.dims[v]; ++r) b.at(base + r, r) = 1;
        incl_blocks.push_back(std::move(b));
    }
    Morphism incl = compose(ck.proj, Morphism{n, p0s_n, incl_blocks});

    // E -> M^s induced by (cover, ..., cover, 0).
    Representation ms = direct_sum(std::vector<Representation>(s, m));
    std::vector<RatMatrix> gblocks;
    for (int v = 0; v < q->vertex_count(); ++v) {
        RatMatrix t(ms.dims[v], p0s_n.dims[v]);
        long long ro = 0, co = 0;
        for (int copy = 0; copy < s; ++copy) {
            const RatMatrix& cv = pres.cover.blocks[v];
            for (std::size_t r = 0; r < cv.rows(); ++r)
                for (std::size_t c = 0; c < cv.cols(); ++c) t.at(ro + r, co + c) = cv.at(r, c);
            ro += m.dims[v];
            co += pres.p0.dims[v];
        }
        bool ok = true;
        RatMatrix g = ck.proj.blocks[v].transpose().solve_matrix(t.transpose(), ok);
        if (!ok) throw InternalError("universal extension projection inconsistent");
        gblocks.push_back(g.transpose());
    }
    Morphism gmap{ck.rep, ms, std::move(gblocks)};

    ShortExactSequence seq{incl, gmap};
    if (!ses_ok(seq)) throw InternalError("universal extension sequence is not exact");
    return UniversalExtension{ck.rep, seq, s};
}

DimVector trace_dims(const Representation& t, const Representation& x) {
    std::vector<Morphism> maps = hom_basis(t, x);
    DimVector out(x.vertex_count(), 0);
    for (int v = 0; v < x.vertex_count(); ++v) {
        RatMatrix stack(x.dims[v], 0);
        for (const auto& f : maps) stack = hstack(stack, f.blocks[v]);
        out[v] = static_cast<long long>(stack.rank());
    }
    return out;
}

bool fac_contains(const Representation& t, const Representation& x) {
    return trace_dims(t, x) == x.dims;
}

bool is_faithful(const Representation& m) {
    const Quiver& q = *m.quiver;
    for (int i = 0; i < q.vertex_count(); ++i) {
        std::map<int, std::vector<const Path*>> by_dst;
        for (const auto& p : q.paths_from(i)) by_dst[p.dst].push_back(&p);
        for (const auto& [j, group] : by_dst) {
            RatMatrix stack(m.dims[i] * m.dims[j], group.size());
            for (std::size_t g = 0; g < group.size(); ++g) {
                RatMatrix act = path_action(m, *group[g]);
                std::size_t r = 0;
                for (std::size_t rr = 0; rr < act.rows(); ++rr)
                    for (std::size_t cc = 0; cc < act.cols(); ++cc) stack.at(r++, g) = act.at(rr, cc);
            }
            if (stack.rank() != group.size()) return false;
        }
    }
    return true;
}

bool is_sincere(const Representation& m) {
    for (long long d : m.dims)
        if (d <= 0) return false;
    return true;
}

}  // namespace tautilt
