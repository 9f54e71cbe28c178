#pragma once

// Finite-dimensional associative unital augmented algebras over GF(p),
// given by structure constants on a fixed basis.

#include <memory>
#include <string>
#include <vector>

#include "qhopf/linalg.hpp"

namespace qhopf {

struct Term {
    u32 index;
    u32 coeff;
};

using SparseVec = std::vector<Term>; // sorted by index, nonzero coeffs

class Algebra;
using AlgebraRef = std::shared_ptr<const Algebra>;

class Algebra {
public:
    Algebra(u32 p, std::size_t dim)
        : field_(p), dim_(dim), labels_(dim), products_(dim * dim), unit_(dim, 0), counit_(dim, 0) {
        for (std::size_t i = 0; i < dim; ++i) labels_[i] = "e" + std::to_string(i);
    }

    const Fp& field() const { return field_; }
    u32 p() const { return field_.p(); }
    std::size_t dim() const { return dim_; }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_label(std::size_t i, std::string s) { labels_[i] = std::move(s); }

    void set_product(std::size_t i, std::size_t j, SparseVec v) { products_[i * dim_ + j] = std::move(v); }
    void add_product_term(std::size_t i, std::size_t j, std::size_t k, u32 c) {
        c %= field_.p();
        if (!c) return;
        auto& sv = products_[i * dim_ + j];
        for (auto& t : sv)
            if (t.index == k) {
                t.coeff = field_.add(t.coeff, c);
                return;
            }
        sv.push_back({static_cast<u32>(k), c});
    }

    // e_i * e_j expanded in the basis.
    const SparseVec& product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }

    const Vec& unit() const { return unit_; }
    void set_unit(Vec u) { unit_ = std::move(u); }

    const Vec& counit() const { return counit_; }
    void set_counit(Vec c) { counit_ = std::move(c); }

    bool commutative() const { return commutative_; }
    void set_commutative(bool b) { commutative_ = b; }

    u32 counit_of(const Vec& a) const {
        u64 acc = 0;
        for (std::size_t i = 0; i < dim_; ++i) acc += static_cast<u64>(counit_[i]) * a[i];
        return field_.reduce(acc);
    }

    Vec mul(const Vec& a, const Vec& b) const {
        Vec out(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (!b[j]) continue;
                u32 c = field_.mul(a[i], b[j]);
                for (const auto& t : products_[i * dim_ + j])
                    out[t.index] = field_.add(out[t.index], field_.mul(c, t.coeff));
            }
        }
        return out;
    }

    Vec element_pow(Vec a, u64 e) const {
        Vec acc = unit_;
        while (e) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }

    Vec basis_vec(std::size_t i) const {
        Vec v(dim_, 0);
        v[i] = 1;
        return v;
    }

    // Left-multiplication matrix of a.
    Matrix left_mul_matrix(const Vec& a) const {
        Matrix m(field_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec col = mul(a, basis_vec(j));
            for (std::size_t r = 0; r < dim_; ++r) m.at(r, j) = col[r];
        }
        return m;
    }

    // Axiom audit used by fixtures and the spec-file loader.
    std::vector<std::string> axiom_failures() const {
        std::vector<std::string> bad;
        for (std::size_t i = 0; i < dim_ && bad.size() < 8; ++i)
            for (std::size_t j = 0; j < dim_ && bad.size() < 8; ++j) {
                Vec ij = mul(basis_vec(i), basis_vec(j));
                for (std::size_t k = 0; k < dim_ && bad.size() < 8; ++k) {
                    Vec lhs = mul(ij, basis_vec(k));
                    Vec rhs = mul(basis_vec(i), mul(basis_vec(j), basis_vec(k)));
                    if (lhs != rhs)
                        bad.push_back("associativity fails at (" + std::to_string(i) + "," +
                                      std::to_string(j) + "," + std::to_string(k) + ")");
                }
            }
        for (std::size_t i = 0; i < dim_; ++i) {
            if (mul(unit_, basis_vec(i)) != basis_vec(i) || mul(basis_vec(i), unit_) != basis_vec(i)) {
                bad.push_back("unit axiom fails at basis " + std::to_string(i));
                break;
            }
        }
        if (counit_of(unit_) != 1) bad.push_back("counit(1) != 1");
        for (std::size_t i = 0; i < dim_ && bad.size() < 16; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                u32 lhs = counit_of(mul(basis_vec(i), basis_vec(j)));
                u32 rhs = field_.mul(counit_[i], counit_[j]);
                if (lhs != rhs) {
                    bad.push_back("counit not multiplicative at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
                    break;
                }
            }
        if (commutative_) {
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (mul(basis_vec(i), basis_vec(j)) != mul(basis_vec(j), basis_vec(i))) {
                        bad.push_back("commutativity fails at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
                        i = dim_;
                        break;
                    }
        }
        return bad;
    }

    // Derives the two-sided unit from the structure constants, if one exists.
    static Vec derive_unit(const Algebra& a) {
        // u with u*e_j = e_j for all j; then check the right-unit law.
        std::size_t d = a.dim();
        Matrix sys(a.field(), d * d, d);
        Vec rhs(d * d, 0);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < d; ++i)
                for (const auto& t : a.product(i, j)) sys.at(j * d + t.index, i) = t.coeff;
            rhs[j * d + j] = 1;
        }
        auto u = solve_linear(sys, rhs);
        if (!u) throw input_error("algebra has no unit for the given structure constants");
        for (std::size_t j = 0; j < d; ++j)
            if (a.mul(a.basis_vec(j), *u) != a.basis_vec(j))
                throw input_error("derived left unit is not a right unit");
        return *u;
    }

private:
    Fp field_;
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<SparseVec> products_; // (i, j) -> expansion of e_i * e_j
    Vec unit_;
    Vec counit_;
    bool commutative_ = false;
};

// Tensor product algebra A (x) B with the lexicographic basis e_i (x) f_j.
inline AlgebraRef tensor_product_algebra(const AlgebraRef& a, const AlgebraRef& b) {
    if (a->p() != b->p()) throw input_error("tensor_product_algebra: characteristic mismatch");
    const Fp& F = a->field();
    std::size_t da = a->dim(), db = b->dim();
    auto out = std::make_shared<Algebra>(F.p(), da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            out->set_label(i * db + j, a->labels()[i] + "*" + b->labels()[j]);
    for (std::size_t i1 = 0; i1 < da; ++i1)
        for (std::size_t j1 = 0; j1 < db; ++j1)
            for (std::size_t i2 = 0; i2 < da; ++i2)
                for (std::size_t j2 = 0; j2 < db; ++j2) {
                    SparseVec sv;
                    for (const auto& ta : a->product(i1, i2))
                        for (const auto& tb : b->product(j1, j2))
                            sv.push_back({static_cast<u32>(ta.index * db + tb.index),
                                          F.mul(ta.coeff, tb.coeff)});
                    out->set_product(i1 * db + j1, i2 * db + j2, std::move(sv));
                }
    Vec unit(da * db, 0), counit(da * db, 0);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            unit[i * db + j] = F.mul(a->unit()[i], b->unit()[j]);
            counit[i * db + j] = F.mul(a->counit()[i], b->counit()[j]);
        }
    out->set_unit(std::move(unit));
    out->set_counit(std::move(counit));
    out->set_commutative(a->commutative() && b->commutative());
    return out;
}

// Filtration A = I^0 > I > I^2 > ... > I^N = 0 by powers of the Jacobson
// radical of a commutative algebra. Layer r stores an echelon basis of I^r.
class RadicalFiltration {
public:
    explicit RadicalFiltration(AlgebraRef alg) : alg_(std::move(alg)) {
        if (!alg_->commutative())
            throw unsupported("radical computation is scoped to commutative algebras");
        const Fp& F = alg_->field();
        std::size_t d = alg_->dim();

        // I = {x : x^{p^K} = 0} = ker(Frobenius^K), K minimal with p^K >= dim.
        // Over the prime field a |-> a^p is linear, so Frobenius has a matrix.
        Matrix frob(F, d, d);
        for (std::size_t j = 0; j < d; ++j) {
            Vec fj = alg_->element_pow(alg_->basis_vec(j), F.p());
            for (std::size_t r = 0; r < d; ++r) frob.at(r, j) = fj[r];
        }
        Matrix frob_k = Matrix::identity(F.p(), d);
        u64 pk = 1;
        while (pk < d) {
            frob_k = frob.multiply(frob_k);
            pk *= F.p();
        }
        std::vector<Vec> rad = kernel_basis(frob_k);

        Echelon full(F, d);
        for (std::size_t i = 0; i < d; ++i) full.insert(alg_->basis_vec(i));
        layers_.push_back(full);

        Echelon layer1(F, d);
        for (auto& v : rad) layer1.insert(v);
        layers_.push_back(layer1);

        // I^{r+1} = span{ x*y : x in basis(I^r), y in basis(I) }
        while (layers_.back().rank() > 0) {
            const auto& prev = layers_.back().basis();
            Echelon next(F, d);
            for (const auto& x : prev)
                for (const auto& y : layers_[1].basis()) next.insert(alg_->mul(x, y));
            layers_.push_back(next);
            if (layers_.size() > d + 2) throw internal_error("radical filtration failed to terminate");
        }
    }

    const AlgebraRef& algebra() const { return alg_; }

    // Number of layers including I^0 = A and the terminal zero layer.
    std::size_t length() const { return layers_.size(); }

    // Nilpotency index: smallest N with I^N = 0.
    std::size_t nil_index() const { return layers_.size() - 1; }

    const Echelon& layer(std::size_t r) const { return layers_[std::min(r, layers_.size() - 1)]; }

    bool in_radical(const Vec& v) const { return layers_[1].contains(v); }

    // Smallest r with v in I^r; degree of 0 is nil_index().
    std::size_t degree(const Vec& v) const {
        if (vec_is_zero(v)) return nil_index();
        std::size_t r = 0;
        while (r + 1 < layers_.size() && layers_[r + 1].contains(v)) ++r;
        return r;
    }

    // A basis of A adapted to the filtration: degrees[k] = r means the k-th
    // vector lifts a basis element of I^r / I^{r+1}.
    struct AdaptedBasis {
        std::vector<Vec> vectors;
        std::vector<std::size_t> degrees;
    };

    AdaptedBasis adapted_basis() const {
        const Fp& F = alg_->field();
        std::size_t d = alg_->dim();
        AdaptedBasis out;
        Echelon seen(F, d);
        for (std::size_t r = layers_.size(); r-- > 0;) {
            for (const auto& v : layers_[r].basis()) {
                if (seen.insert(v)) {
                    out.vectors.push_back(v);
                    out.degrees.push_back(r);
                }
            }
        }
        // reorder by ascending degree, stable within a layer
        std::vector<std::size_t> order(out.vectors.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return out.degrees[x] < out.degrees[y]; });
        AdaptedBasis sorted;
        for (auto i : order) {
            sorted.vectors.push_back(out.vectors[i]);
            sorted.degrees.push_back(out.degrees[i]);
        }
        return sorted;
    }

private:
    AlgebraRef alg_;
    std::vector<Echelon> layers_;
};

// Splitting A = k1 (+) I with a fixed basis of I = ker(counit). When the unit
// is a stored basis vector the I-basis keeps the stored monomials; otherwise
// an echelon kernel basis is used. The choice is immaterial for everything
// built on top (well-definedness is exercised by tests under random changes
// of basis).
class AugmentedSplit {
public:
    explicit AugmentedSplit(AlgebraRef alg) : alg_(std::move(alg)), P_(alg_->field(), 0, 0), Pinv_(P_) {
        const Fp& F = alg_->field();
        std::size_t d = alg_->dim();
        if (alg_->counit_of(alg_->unit()) != 1) throw input_error("algebra is not augmented");

        std::size_t unit_index = d;
        for (std::size_t i = 0; i < d; ++i)
            if (alg_->unit() == alg_->basis_vec(i)) { unit_index = i; break; }

        if (unit_index < d) {
            for (std::size_t i = 0; i < d; ++i) {
                if (i == unit_index) continue;
                Vec f = alg_->basis_vec(i);
                u32 e = alg_->counit_of(f);
                if (e) {
                    // f - eps(f) * 1
                    f[unit_index] = F.sub(f[unit_index], e);
                }
                ibasis_.push_back(std::move(f));
            }
        } else {
            Matrix row(F, 1, d);
            for (std::size_t i = 0; i < d; ++i) row.at(0, i) = alg_->counit()[i];
            ibasis_ = kernel_basis(row);
        }
        if (ibasis_.size() != d - 1) throw internal_error("augmentation ideal has wrong dimension");

        P_ = Matrix(F, d, d);
        for (std::size_t r = 0; r < d; ++r) P_.at(r, 0) = alg_->unit()[r];
        for (std::size_t j = 0; j < ibasis_.size(); ++j)
            for (std::size_t r = 0; r < d; ++r) P_.at(r, j + 1) = ibasis_[j][r];
        Pinv_ = inverse(P_);

        // I-basis products expanded back over the I-basis; the unit component
        // vanishes because I is an ideal.
        std::size_t m = ibasis_.size();
        iprod_.resize(m * m);
        for (std::size_t u = 0; u < m; ++u)
            for (std::size_t v = 0; v < m; ++v) {
                Vec prod = Pinv_.apply(alg_->mul(ibasis_[u], ibasis_[v]));
                if (prod[0] != 0) throw internal_error("product of augmentation-ideal elements left I");
                SparseVec sv;
                for (std::size_t k = 1; k < d; ++k)
                    if (prod[k]) sv.push_back({static_cast<u32>(k - 1), prod[k]});
                iprod_[u * m + v] = std::move(sv);
            }

        if (alg_->commutative()) {
            RadicalFiltration rad(alg_);
            nil_index_ = rad.nil_index();
            for (const auto& f : ibasis_) ideg_.push_back(rad.degree(f));
        }
    }

    const AlgebraRef& algebra() const { return alg_; }
    std::size_t idim() const { return ibasis_.size(); }
    const std::vector<Vec>& ibasis() const { return ibasis_; }
    const Matrix& P() const { return P_; }
    const Matrix& Pinv() const { return Pinv_; }

    // f_u * f_v over the I-basis.
    const SparseVec& iproduct(std::size_t u, std::size_t v) const {
        return iprod_[u * ibasis_.size() + v];
    }

    bool has_degrees() const { return !ideg_.empty(); }
    std::size_t idegree(std::size_t i) const { return ideg_[i]; }
    std::size_t nil_index() const { return nil_index_; }

private:
    AlgebraRef alg_;
    std::vector<Vec> ibasis_;
    std::vector<std::size_t> ideg_;
    std::size_t nil_index_ = 0;
    Matrix P_, Pinv_;
    std::vector<SparseVec> iprod_;
};

} // namespace qhopf
