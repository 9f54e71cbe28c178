#pragma once

// Line-oriented spec files for algebras, presets, associators and R-matrices.
//
//   # comment
//   [field] p=3
//   [preset] name=alpha params=1
//   [algebra] dim=3
//   labels 1 x x^2
//   sc i j k v            e_i e_j += v e_k
//   comul i j k v         Delta(e_i) += v e_j (x) e_k
//   counit v0 v1 ... v_{dim-1}
//   unit i v              optional; derived from the structure constants if absent
//   [associator]
//   i j k v               Phi += v e_i (x) e_j (x) e_k   (full tensor, unit part included)
//   [rmatrix]
//   i j v
//
// Exactly one of [preset] / [algebra] is required. Parsing instantiates the
// document and validates the bialgebra axioms; failures carry a line number.

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qhopf/catalog.hpp"

namespace qhopf {

struct spec_error : input_error {
    spec_error(std::size_t line, std::size_t col, const std::string& what)
        : input_error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line),
          column(col) {}
    std::size_t line, column;
};

struct PresetSpec {
    std::string name;
    std::vector<u32> params;

    bool operator==(const PresetSpec&) const = default;
};

struct SpecDocument {
    u32 p = 0;
    std::optional<PresetSpec> preset;

    // explicit-algebra payload (raw, for serialization round trips)
    struct Explicit {
        std::size_t dim = 0;
        std::vector<std::string> labels;
        std::vector<std::array<u32, 4>> sc;    // i j k v
        std::vector<std::array<u32, 4>> comul; // i j k v
        Vec counit;
        std::vector<std::pair<u32, u32>> unit; // sparse (index, value); empty = derive

        bool operator==(const Explicit&) const = default;
    };
    std::optional<Explicit> algebra;

    std::vector<std::array<u32, 4>> associator_entries; // i j k v
    std::vector<std::array<u32, 3>> rmatrix_entries;    // i j v

    // instantiated objects
    HopfRef hopf;
    std::optional<TensorElement> associator;
    std::optional<TensorElement> r_matrix;

    bool same_content(const SpecDocument& o) const {
        return p == o.p && preset == o.preset && algebra == o.algebra &&
               associator_entries == o.associator_entries && rmatrix_entries == o.rmatrix_entries;
    }
};

namespace specdetail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline u32 parse_u32(const std::string& s, std::size_t line, const char* what) {
    u32 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw spec_error(line, 1, std::string("expected an integer for ") + what + ", got '" + s + "'");
    return v;
}

inline std::vector<u32> parse_int_list(const std::string& s, std::size_t line, const char* what) {
    std::vector<u32> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(parse_u32(cur, line, what));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

// key=value on a section header
inline std::optional<std::string> header_value(const std::vector<std::string>& toks,
                                               const std::string& key) {
    for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].rfind(key + "=", 0) == 0) return toks[i].substr(key.size() + 1);
    }
    return std::nullopt;
}

inline HopfRef instantiate_preset(const PresetSpec& ps, u32 p, std::size_t line) {
    const auto& prm = ps.params;
    auto need = [&](std::size_t n) {
        if (prm.size() != n)
            throw spec_error(line, 1, "preset '" + ps.name + "' expects " + std::to_string(n) +
                                          " parameter(s)");
    };
    if (ps.name == "alpha") {
        need(1);
        return make_alpha(p, prm[0]);
    }
    if (ps.name == "alpha_dual") {
        need(1);
        return make_alpha_dual(p, prm[0]);
    }
    if (ps.name == "cyclic") {
        need(1);
        return make_cyclic_group_algebra(p, prm[0]);
    }
    if (ps.name == "z2") {
        need(0);
        return make_z2_group_algebra(p);
    }
    if (ps.name == "u_abelian") {
        if (prm.empty()) throw spec_error(line, 1, "preset 'u_abelian' expects d [matrix entries]");
        u32 d = prm[0];
        if (prm.size() == 1) return make_u_abelian(p, d);
        if (prm.size() != 1 + std::size_t(d) * d)
            throw spec_error(line, 1, "p-power matrix needs d*d entries");
        std::vector<Vec> pp(d, Vec(d, 0));
        for (u32 c = 0; c < d; ++c)
            for (u32 r = 0; r < d; ++r) pp[c][r] = prm[1 + c * d + r] % p;
        return make_u_abelian(p, d, pp);
    }
    if (ps.name == "alpha_product") {
        if (prm.empty()) throw spec_error(line, 1, "preset 'alpha_product' expects r1,r2,...");
        return make_alpha_product(p, prm);
    }
    throw spec_error(line, 1, "unknown preset '" + ps.name + "'");
}

inline HopfRef instantiate_explicit(const SpecDocument::Explicit& ex, u32 p, std::size_t line) {
    std::size_t d = ex.dim;
    auto alg = std::make_shared<Algebra>(p, d);
    for (std::size_t i = 0; i < ex.labels.size() && i < d; ++i) alg->set_label(i, ex.labels[i]);
    Fp F(p);
    for (const auto& [i, j, k, v] : ex.sc) {
        if (i >= d || j >= d || k >= d)
            throw spec_error(line, 1, "structure constant index out of range");
        alg->add_product_term(i, j, k, v);
    }
    if (ex.counit.size() != d) throw spec_error(line, 1, "counit must list one value per basis element");
    Vec counit = ex.counit;
    for (auto& c : counit) c %= p;
    alg->set_counit(std::move(counit));
    if (!ex.unit.empty()) {
        Vec unit(d, 0);
        for (const auto& [i, v] : ex.unit) {
            if (i >= d) throw spec_error(line, 1, "unit index out of range");
            unit[i] = v % p;
        }
        alg->set_unit(std::move(unit));
        if (alg->mul(alg->unit(), alg->basis_vec(0)) != alg->basis_vec(0))
            throw spec_error(line, 1, "declared unit is not a left unit");
    } else {
        alg->set_unit(Algebra::derive_unit(*alg));
    }

    bool commutative = true;
    for (std::size_t i = 0; i < d && commutative; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (alg->mul(alg->basis_vec(i), alg->basis_vec(j)) !=
                alg->mul(alg->basis_vec(j), alg->basis_vec(i))) {
                commutative = false;
                break;
            }
    alg->set_commutative(commutative);

    std::vector<Vec> delta(d, Vec(d * d, 0));
    for (const auto& [i, j, k, v] : ex.comul) {
        if (i >= d || j >= d || k >= d) throw spec_error(line, 1, "comul index out of range");
        delta[i][std::size_t(j) * d + k] = F.add(delta[i][std::size_t(j) * d + k], v % p);
    }
    bool cocommutative = true;
    for (std::size_t i = 0; i < d && cocommutative; ++i)
        for (std::size_t a = 0; a < d && cocommutative; ++a)
            for (std::size_t b = 0; b < d; ++b)
                if (delta[i][a * d + b] != delta[i][b * d + a]) {
                    cocommutative = false;
                    break;
                }
    return make_hopf(std::move(alg), std::move(delta), cocommutative);
}

} // namespace specdetail

inline SpecDocument parse_spec(const std::string& text) {
    using namespace specdetail;
    SpecDocument doc;
    enum class Section { none, field, preset, algebra, associator, rmatrix };
    Section cur = Section::none;
    std::size_t field_line = 0, structure_line = 0;

    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto toks = tokens(line);
        if (toks.empty()) continue;

        if (toks[0].front() == '[') {
            if (toks[0] == "[field]") {
                cur = Section::field;
                field_line = lineno;
                auto pv = header_value(toks, "p");
                if (!pv) throw spec_error(lineno, 1, "[field] requires p=<prime>");
                doc.p = parse_u32(*pv, lineno, "p");
                if (!is_prime_u32(doc.p)) throw spec_error(lineno, 1, "characteristic must be prime");
            } else if (toks[0] == "[preset]") {
                cur = Section::preset;
                structure_line = lineno;
                auto nv = header_value(toks, "name");
                if (!nv) throw spec_error(lineno, 1, "[preset] requires name=<id>");
                PresetSpec ps;
                ps.name = *nv;
                if (auto pv = header_value(toks, "params"))
                    ps.params = parse_int_list(*pv, lineno, "params");
                doc.preset = std::move(ps);
            } else if (toks[0] == "[algebra]") {
                cur = Section::algebra;
                structure_line = lineno;
                auto dv = header_value(toks, "dim");
                if (!dv) throw spec_error(lineno, 1, "[algebra] requires dim=<n>");
                SpecDocument::Explicit ex;
                ex.dim = parse_u32(*dv, lineno, "dim");
                if (ex.dim == 0 || ex.dim > 4096) throw spec_error(lineno, 1, "dim out of range");
                doc.algebra = std::move(ex);
            } else if (toks[0] == "[associator]") {
                cur = Section::associator;
            } else if (toks[0] == "[rmatrix]") {
                cur = Section::rmatrix;
            } else {
                throw spec_error(lineno, 1, "unknown section " + toks[0]);
            }
            continue;
        }

        switch (cur) {
            case Section::algebra: {
                auto& ex = *doc.algebra;
                if (toks[0] == "labels") {
                    ex.labels.assign(toks.begin() + 1, toks.end());
                } else if (toks[0] == "sc" || toks[0] == "comul") {
                    if (toks.size() != 5)
                        throw spec_error(lineno, 1, toks[0] + " expects: i j k v");
                    std::array<u32, 4> e;
                    for (int t = 0; t < 4; ++t) e[t] = parse_u32(toks[t + 1], lineno, "entry");
                    (toks[0] == "sc" ? ex.sc : ex.comul).push_back(e);
                } else if (toks[0] == "counit") {
                    ex.counit.clear();
                    for (std::size_t t = 1; t < toks.size(); ++t)
                        ex.counit.push_back(parse_u32(toks[t], lineno, "counit value"));
                } else if (toks[0] == "unit") {
                    if (toks.size() != 3) throw spec_error(lineno, 1, "unit expects: i v");
                    ex.unit.push_back({parse_u32(toks[1], lineno, "index"),
                                       parse_u32(toks[2], lineno, "value")});
                } else {
                    throw spec_error(lineno, 1, "unknown [algebra] entry '" + toks[0] + "'");
                }
                break;
            }
            case Section::associator: {
                if (toks.size() != 4) throw spec_error(lineno, 1, "[associator] entries are: i j k v");
                std::array<u32, 4> e;
                for (int t = 0; t < 4; ++t) e[t] = parse_u32(toks[t], lineno, "entry");
                doc.associator_entries.push_back(e);
                break;
            }
            case Section::rmatrix: {
                if (toks.size() != 3) throw spec_error(lineno, 1, "[rmatrix] entries are: i j v");
                doc.rmatrix_entries.push_back({parse_u32(toks[0], lineno, "entry"),
                                               parse_u32(toks[1], lineno, "entry"),
                                               parse_u32(toks[2], lineno, "entry")});
                break;
            }
            case Section::field:
            case Section::preset:
                throw spec_error(lineno, 1, "unexpected entry in this section");
            case Section::none:
                throw spec_error(lineno, 1, "content before any section header");
        }
    }

    if (doc.p == 0) throw spec_error(lineno ? lineno : 1, 1, "missing [field] section");
    if (doc.preset.has_value() == doc.algebra.has_value())
        throw spec_error(structure_line ? structure_line : 1, 1,
                         "exactly one of [preset] / [algebra] is required");

    doc.hopf = doc.preset ? specdetail::instantiate_preset(*doc.preset, doc.p, structure_line)
                          : specdetail::instantiate_explicit(*doc.algebra, doc.p, structure_line);

    if (!doc.hopf->algebra()->axiom_failures().empty())
        throw spec_error(structure_line, 1,
                         "algebra axioms fail: " + doc.hopf->algebra()->axiom_failures().front());
    if (!check_bialgebra(*doc.hopf).all_passed())
        throw spec_error(structure_line, 1, "bialgebra axioms fail for the given comultiplication");

    std::size_t d = doc.hopf->dim();
    Fp F(doc.p);
    if (!doc.associator_entries.empty()) {
        TensorElement phi = tensor_zero(doc.hopf->algebra(), 3);
        for (const auto& [i, j, k, v] : doc.associator_entries) {
            if (i >= d || j >= d || k >= d)
                throw spec_error(structure_line, 1, "associator index out of range");
            u64 flat = (u64(i) * d + j) * d + k;
            phi.coords[flat] = F.add(phi.coords[flat], v % doc.p);
        }
        doc.associator = std::move(phi);
    }
    if (!doc.rmatrix_entries.empty()) {
        TensorElement r = tensor_zero(doc.hopf->algebra(), 2);
        for (const auto& [i, j, v] : doc.rmatrix_entries) {
            if (i >= d || j >= d) throw spec_error(structure_line, 1, "rmatrix index out of range");
            r.coords[u64(i) * d + j] = F.add(r.coords[u64(i) * d + j], v % doc.p);
        }
        doc.r_matrix = std::move(r);
    }
    return doc;
}

inline std::string serialize_spec(const SpecDocument& doc) {
    std::ostringstream os;
    os << "[field] p=" << doc.p << "\n";
    if (doc.preset) {
        os << "[preset] name=" << doc.preset->name;
        if (!doc.preset->params.empty()) {
            os << " params=";
            for (std::size_t i = 0; i < doc.preset->params.size(); ++i)
                os << (i ? "," : "") << doc.preset->params[i];
        }
        os << "\n";
    } else if (doc.algebra) {
        const auto& ex = *doc.algebra;
        os << "[algebra] dim=" << ex.dim << "\n";
        if (!ex.labels.empty()) {
            os << "labels";
            for (const auto& l : ex.labels) os << ' ' << l;
            os << "\n";
        }
        for (const auto& [i, j, k, v] : ex.sc) os << "sc " << i << ' ' << j << ' ' << k << ' ' << v << "\n";
        for (const auto& [i, j, k, v] : ex.comul)
            os << "comul " << i << ' ' << j << ' ' << k << ' ' << v << "\n";
        os << "counit";
        for (u32 v : ex.counit) os << ' ' << v;
        os << "\n";
        for (const auto& [i, v] : ex.unit) os << "unit " << i << ' ' << v << "\n";
    }
    if (!doc.associator_entries.empty()) {
        os << "[associator]\n";
        for (const auto& [i, j, k, v] : doc.associator_entries)
            os << i << ' ' << j << ' ' << k << ' ' << v << "\n";
    }
    if (!doc.rmatrix_entries.empty()) {
        os << "[rmatrix]\n";
        for (const auto& [i, j, v] : doc.rmatrix_entries) os << i << ' ' << j << ' ' << v << "\n";
    }
    return os.str();
}

} // namespace qhopf
