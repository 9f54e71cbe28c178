#pragma once

// Ordered key=value report; keys are dotted paths, output is line-oriented
// UTF-8 text, deterministic for identical inputs.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qhopf/cohomology.hpp"

namespace qhopf {

class Report {
public:
    void add(std::string key, std::string value) {
        entries_.push_back({std::move(key), std::move(value)});
    }

    void add(std::string key, u64 value) { add(std::move(key), std::to_string(value)); }

    void add_verdict(std::string key, bool pass) { add(std::move(key), pass ? "pass" : "fail"); }

    void add_flag(std::string key, bool value) { add(std::move(key), value ? "yes" : "no"); }

    // sparse multi-index rendering: "i1,i2,...:v" joined by spaces, ascending
    void add_tensor(std::string key, const TensorElement& t) {
        std::ostringstream os;
        std::size_t dim = t.alg->dim();
        bool first = true;
        for (u64 flat = 0; flat < t.coords.size(); ++flat) {
            if (!t.coords[flat]) continue;
            if (!first) os << ' ';
            first = false;
            auto digits = detail::digits_of(flat, dim, t.arity);
            for (u32 k = 0; k < t.arity; ++k) {
                if (k) os << ',';
                os << digits[k];
            }
            os << ':' << t.coords[flat];
        }
        add(std::move(key), first ? "0" : os.str());
    }

    // same rendering for cochain coordinates over an I-basis
    void add_coords(std::string key, const Vec& coords, std::size_t radix, u32 arity) {
        std::ostringstream os;
        bool first = true;
        std::vector<u32> digits(arity);
        for (u64 flat = 0; flat < coords.size(); ++flat) {
            if (!coords[flat]) continue;
            if (!first) os << ' ';
            first = false;
            detail::decode(flat, radix, arity, digits.data());
            for (u32 k = 0; k < arity; ++k) {
                if (k) os << ',';
                os << digits[k];
            }
            os << ':' << coords[flat];
        }
        add(std::move(key), first ? "0" : os.str());
    }

    void add_axiom_report(const std::string& prefix, const AxiomReport& rep) {
        for (const auto& c : rep.checks) add_verdict(prefix + "." + c.name, c.pass);
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    bool has(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key) return true;
        return false;
    }

    std::string get(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key) return v;
        return {};
    }

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
        return os.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace qhopf
