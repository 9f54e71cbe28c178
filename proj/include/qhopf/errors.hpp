#pragma once

#include <stdexcept>
#include <string>

namespace qhopf {

// Bad caller input: dimension mismatch, wrong arity, malformed data.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested inverse of a singular element.
struct not_invertible : std::runtime_error {
    explicit not_invertible(const std::string& what) : std::runtime_error(what) {}
};

// Operation is outside the supported fragment (p = 2 square roots,
// non-commutative radicals, degree restrictions, ...).
struct unsupported : std::runtime_error {
    explicit unsupported(const std::string& what) : std::runtime_error(what) {}
};

struct not_idempotent_mod_radical : std::runtime_error {
    explicit not_idempotent_mod_radical(const std::string& what) : std::runtime_error(what) {}
};

// The radical is not a Hopf ideal, so gr(H) carries no induced Hopf structure.
struct chevalley_violation : std::runtime_error {
    explicit chevalley_violation(const std::string& what) : std::runtime_error(what) {}
};

struct resource_limit : std::runtime_error {
    explicit resource_limit(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace qhopf
