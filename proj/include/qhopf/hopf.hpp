#pragma once

// Bialgebra layer: comultiplication and counit on top of an Algebra, duals,
// primitives, grouplike membership, and the associated graded Hopf algebra
// of the radical filtration.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhopf/tensor.hpp"

namespace qhopf {

class HopfStructure;
using HopfRef = std::shared_ptr<const HopfStructure>;

class HopfStructure {
public:
    HopfStructure(AlgebraRef alg, std::vector<Vec> delta, bool cocommutative)
        : alg_(std::move(alg)), delta_(std::move(delta)), cocommutative_(cocommutative) {
        if (delta_.size() != alg_->dim()) throw input_error("comultiplication table size mismatch");
        for (const auto& d : delta_)
            if (d.size() != alg_->dim() * alg_->dim())
                throw input_error("comultiplication entries must live in A (x) A");
    }

    const AlgebraRef& algebra() const { return alg_; }
    const Fp& field() const { return alg_->field(); }
    std::size_t dim() const { return alg_->dim(); }

    // Coordinates of Delta(e_i) in A (x) A.
    const std::vector<Vec>& delta_table() const { return delta_; }

    bool cocommutative() const { return cocommutative_; }

    Vec comul(const Vec& a) const {
        std::size_t d = alg_->dim();
        Vec out(d * d, 0);
        const Fp& F = alg_->field();
        for (std::size_t i = 0; i < d; ++i) {
            if (!a[i]) continue;
            vec_axpy(F, out, a[i], delta_[i]);
        }
        return out;
    }

    TensorElement comul_tensor(const Vec& a) const { return TensorElement{alg_, 2, comul(a)}; }

private:
    AlgebraRef alg_;
    std::vector<Vec> delta_;
    bool cocommutative_;
};

inline HopfRef make_hopf(AlgebraRef alg, std::vector<Vec> delta, bool cocommutative) {
    return std::make_shared<HopfStructure>(std::move(alg), std::move(delta), cocommutative);
}

struct AxiomCheck {
    std::string name;
    bool pass;
    std::optional<TensorElement> residual; // difference of the two sides when failing
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const AxiomCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    void add(std::string name, const TensorElement& lhs, const TensorElement& rhs) {
        TensorElement res = tensor_sub(lhs, rhs);
        bool ok = res.is_zero();
        checks.push_back({std::move(name), ok, ok ? std::nullopt : std::optional<TensorElement>(res)});
    }

    void add_flag(std::string name, bool pass) { checks.push_back({std::move(name), pass, std::nullopt}); }

    void merge(const AxiomReport& other) {
        for (const auto& c : other.checks) checks.push_back(c);
    }
};

// Coassociativity, counit law, homomorphism properties, cocommutativity.
inline AxiomReport check_bialgebra(const HopfStructure& h) {
    AxiomReport rep;
    const AlgebraRef& A = h.algebra();
    const Fp& F = A->field();
    std::size_t d = A->dim();

    bool coassoc = true, counit_law = true, delta_hom = true, cocomm = true;
    TensorElement unit2 = tensor_unit(A, 2);

    for (std::size_t i = 0; i < d; ++i) {
        TensorElement di = h.comul_tensor(A->basis_vec(i));
        if (coassoc) {
            TensorElement l = comul_at(di, 0, h.delta_table());
            TensorElement r = comul_at(di, 1, h.delta_table());
            if (!tensor_equal(l, r)) coassoc = false;
        }
        if (counit_law) {
            Vec left = counit_contract(di, 0).coords;
            Vec right = counit_contract(di, 1).coords;
            if (left != A->basis_vec(i) || right != A->basis_vec(i)) counit_law = false;
        }
        if (h.cocommutative() && cocomm) {
            if (!tensor_equal(permute_slots(di, {2, 1}), di)) cocomm = false;
        }
    }
    for (std::size_t i = 0; i < d && delta_hom; ++i)
        for (std::size_t j = 0; j < d && delta_hom; ++j) {
            Vec prod = A->mul(A->basis_vec(i), A->basis_vec(j));
            TensorElement lhs = h.comul_tensor(prod);
            TensorElement rhs =
                tensor_multiply(h.comul_tensor(A->basis_vec(i)), h.comul_tensor(A->basis_vec(j)));
            if (!tensor_equal(lhs, rhs)) delta_hom = false;
        }
    bool delta_unit = h.comul(A->unit()) == unit2.coords;
    bool counit_hom = A->axiom_failures().empty();

    rep.add_flag("coassociativity", coassoc);
    rep.add_flag("counit_law", counit_law);
    rep.add_flag("comul_is_algebra_map", delta_hom && delta_unit);
    rep.add_flag("algebra_axioms", counit_hom);
    if (h.cocommutative()) rep.add_flag("cocommutativity", cocomm);
    return rep;
}

// Basis of {x : Delta(x) = x(x)1 + 1(x)x}; every such x has counit 0.
inline std::vector<Vec> primitives(const HopfStructure& h) {
    const AlgebraRef& A = h.algebra();
    const Fp& F = A->field();
    std::size_t d = A->dim();
    Matrix sys(F, d * d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec col = h.delta_table()[i]; // Delta(e_i)
        TensorElement ei{A, 1, A->basis_vec(i)};
        Vec l = insert_unit(ei, 1).coords;  // e_i (x) 1
        Vec r = insert_unit(ei, 0).coords;  // 1 (x) e_i
        for (std::size_t k = 0; k < d * d; ++k) sys.at(k, i) = F.sub(col[k], F.add(l[k], r[k]));
    }
    return kernel_basis(sys);
}

inline bool is_grouplike(const HopfStructure& h, const Vec& g) {
    if (h.algebra()->counit_of(g) != 1) return false;
    TensorElement gt{h.algebra(), 1, g};
    TensorElement gg = tensor_outer(h.algebra(), {g, g});
    return h.comul(g) == gg.coords;
}

// The dual Hopf algebra on the dual basis: multiplication is the transpose of
// Delta, comultiplication the transpose of multiplication. Applying it twice
// returns the original coordinates.
inline HopfRef dual_hopf(const HopfStructure& h) {
    const AlgebraRef& A = h.algebra();
    const Fp& F = A->field();
    std::size_t d = A->dim();
    auto dual = std::make_shared<Algebra>(F.p(), d);
    for (std::size_t i = 0; i < d; ++i) dual->set_label(i, A->labels()[i] + "*");
    // (e_i* e_j*)(e_k) = coefficient of e_i (x) e_j in Delta(e_k)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            SparseVec sv;
            for (std::size_t k = 0; k < d; ++k) {
                u32 c = h.delta_table()[k][i * d + j];
                if (c) sv.push_back({static_cast<u32>(k), c});
            }
            dual->set_product(i, j, std::move(sv));
        }
    dual->set_unit(A->counit());
    dual->set_counit(A->unit());
    dual->set_commutative(h.cocommutative());
    // Delta_dual(e_k*) = sum_{i,j} c_{ij}^k e_i* (x) e_j*
    std::vector<Vec> delta(d, Vec(d * d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& t : A->product(i, j))
                delta[t.index][i * d + j] = F.add(delta[t.index][i * d + j], t.coeff);
    return make_hopf(std::move(dual), std::move(delta), A->commutative());
}

// Hopf structure on A (x) B with Delta = (1 (x) swap (x) 1)(Delta_A (x) Delta_B).
inline HopfRef tensor_product_hopf(const HopfStructure& ha, const HopfStructure& hb) {
    AlgebraRef alg = tensor_product_algebra(ha.algebra(), hb.algebra());
    const Fp& F = alg->field();
    std::size_t da = ha.dim(), db = hb.dim(), d = da * db;
    std::vector<Vec> delta(d, Vec(d * d, 0));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            const Vec& dA = ha.delta_table()[i];
            const Vec& dB = hb.delta_table()[j];
            Vec& out = delta[i * db + j];
            for (std::size_t a = 0; a < da; ++a)
                for (std::size_t b = 0; b < da; ++b) {
                    u32 c1 = dA[a * da + b];
                    if (!c1) continue;
                    for (std::size_t u = 0; u < db; ++u)
                        for (std::size_t v = 0; v < db; ++v) {
                            u32 c2 = dB[u * db + v];
                            if (!c2) continue;
                            std::size_t left = a * db + u, right = b * db + v;
                            out[left * d + right] = F.add(out[left * d + right], F.mul(c1, c2));
                        }
                }
        }
    return make_hopf(std::move(alg), std::move(delta), ha.cocommutative() && hb.cocommutative());
}

struct GradedHopf {
    HopfRef hopf;
    std::vector<std::size_t> degrees; // radical degree per basis element
};

// gr(H) over the radical filtration. Requires I to be a Hopf ideal
// (Delta(I) inside I(x)A + A(x)I and counit(I) = 0), i.e. the Chevalley
// property for this input.
inline GradedHopf associated_graded(const HopfStructure& h) {
    const AlgebraRef& A = h.algebra();
    const Fp& F = A->field();
    std::size_t d = A->dim();
    RadicalFiltration rad(A);

    // Hopf ideal check
    Echelon mixed(F, d * d); // I (x) A + A (x) I
    for (const auto& b : rad.layer(1).basis()) {
        for (std::size_t j = 0; j < d; ++j) {
            mixed.insert(tensor_outer(A, {b, A->basis_vec(j)}).coords);
            mixed.insert(tensor_outer(A, {A->basis_vec(j), b}).coords);
        }
        if (A->counit_of(b) != 0)
            throw chevalley_violation("counit does not vanish on the radical");
    }
    for (const auto& b : rad.layer(1).basis())
        if (!mixed.contains(h.comul(b)))
            throw chevalley_violation("radical is not a coideal: Delta(I) escapes I(x)A + A(x)I");

    auto adapted = rad.adapted_basis();
    std::size_t n = adapted.vectors.size();
    if (n != d) throw internal_error("adapted basis does not span");

    // change of basis: columns of P are the adapted vectors
    Matrix P(F, d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t r = 0; r < d; ++r) P.at(r, j) = adapted.vectors[j][r];
    auto to_adapted = [&](const Vec& v) {
        auto x = solve_linear(P, v);
        if (!x) throw internal_error("adapted basis change failed");
        return *x;
    };

    auto graded = std::make_shared<Algebra>(F.p(), d);
    for (std::size_t j = 0; j < d; ++j)
        graded->set_label(j, "gr" + std::to_string(adapted.degrees[j]) + "_" + std::to_string(j));

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vec prod = A->mul(adapted.vectors[i], adapted.vectors[j]);
            Vec coords = to_adapted(prod);
            std::size_t target = adapted.degrees[i] + adapted.degrees[j];
            SparseVec sv;
            for (std::size_t k = 0; k < d; ++k) {
                if (!coords[k]) continue;
                if (adapted.degrees[k] < target)
                    throw internal_error("product violates the radical filtration");
                if (adapted.degrees[k] == target) sv.push_back({static_cast<u32>(k), coords[k]});
            }
            graded->set_product(i, j, std::move(sv));
        }
    graded->set_unit(to_adapted(A->unit()));
    Vec counit(d, 0);
    for (std::size_t j = 0; j < d; ++j) counit[j] = A->counit_of(adapted.vectors[j]);
    graded->set_counit(std::move(counit));
    graded->set_commutative(A->commutative());

    // graded Delta: keep the components of matching total degree
    std::vector<Vec> delta(d, Vec(d * d, 0));
    Matrix P2(F, d * d, d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Vec col = tensor_outer(A, {adapted.vectors[a], adapted.vectors[b]}).coords;
            for (std::size_t r = 0; r < d * d; ++r) P2.at(r, a * d + b) = col[r];
        }
    for (std::size_t i = 0; i < d; ++i) {
        Vec dc = h.comul(adapted.vectors[i]);
        auto x = solve_linear(P2, dc);
        if (!x) throw internal_error("adapted basis change failed on A (x) A");
        std::size_t target = adapted.degrees[i];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                u32 c = (*x)[a * d + b];
                if (!c) continue;
                std::size_t deg = adapted.degrees[a] + adapted.degrees[b];
                if (deg < target)
                    throw chevalley_violation("comultiplication drops below the filtration degree");
                if (deg == target) delta[i][a * d + b] = c;
            }
    }

    GradedHopf out;
    out.hopf = make_hopf(std::move(graded), std::move(delta), h.cocommutative());
    out.degrees = adapted.degrees;
    return out;
}

// Degrees making the *stored* basis radically graded, when it already is
// (catalog truncated-polynomial algebras). Nullopt if the stored basis is not
// adapted to the filtration or the structure maps are not graded.
inline std::optional<std::vector<std::size_t>> radical_grading(const HopfStructure& h) {
    const AlgebraRef& A = h.algebra();
    if (!A->commutative()) return std::nullopt;
    RadicalFiltration rad(A);
    std::size_t d = A->dim();
    std::vector<std::size_t> deg(d);
    for (std::size_t i = 0; i < d; ++i) {
        deg[i] = rad.degree(A->basis_vec(i));
        if (deg[i] >= rad.nil_index() && !vec_is_zero(A->basis_vec(i))) {
            if (deg[i] > rad.nil_index()) return std::nullopt;
        }
    }
    // per-degree counts must match the filtration layer dimensions
    for (std::size_t r = 0; r + 1 < rad.length(); ++r) {
        std::size_t expect = rad.layer(r).rank() - rad.layer(r + 1).rank();
        std::size_t got = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (deg[i] == r) ++got;
        if (expect != got) return std::nullopt;
    }
    // structure constants and Delta must be strictly graded
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& t : A->product(i, j))
                if (deg[t.index] != deg[i] + deg[j]) return std::nullopt;
    for (std::size_t i = 0; i < d; ++i) {
        const Vec& di = h.delta_table()[i];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                if (di[a * d + b] && deg[a] + deg[b] != deg[i]) return std::nullopt;
    }
    return deg;
}

} // namespace qhopf
