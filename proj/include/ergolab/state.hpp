#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "ergolab/errors.hpp"

namespace ergolab {

struct State;

// Point on a torus T^d; every coordinate stays in [0, 1).
struct TorusState {
    std::vector<double> x;
    bool operator==(const TorusState&) const = default;
};

// Point of a two-sided symbol shift: a seeded lazy symbol table. The
// sequence is never materialized; the symbol at absolute index i is a pure
// function of (key, i), so T^n for any n in Z is an offset shift.
struct SymbolState {
    uint64_t key = 0;
    int64_t offset = 0;
    bool operator==(const SymbolState&) const = default;
};

struct CyclicState {
    int64_t j = 0;  // residue in [0, q)
    int64_t q = 1;
    bool operator==(const CyclicState&) const = default;
};

struct ProductState {
    std::vector<State> parts;  // size 2
    bool operator==(const ProductState&) const = default;
};

struct UnionState {
    size_t component = 0;
    std::vector<State> inner;  // size 1
    bool operator==(const UnionState&) const = default;
};

struct State {
    std::variant<TorusState, SymbolState, CyclicState, ProductState, UnionState> v;
    bool operator==(const State&) const = default;
};

inline State make_torus_state(std::vector<double> coords) { return State{TorusState{std::move(coords)}}; }
inline State make_cyclic_state(int64_t j, int64_t q) { return State{CyclicState{j, q}}; }
inline State make_symbol_state(uint64_t key, int64_t offset = 0) { return State{SymbolState{key, offset}}; }

// Sees through union tags so observables written for a component space
// evaluate on union states unchanged.
inline const State& unwrap_union(const State& s) {
    const State* p = &s;
    while (const auto* u = std::get_if<UnionState>(&p->v)) p = &u->inner.front();
    return *p;
}

inline const TorusState& as_torus(const State& s) {
    const auto* t = std::get_if<TorusState>(&unwrap_union(s).v);
    if (!t) throw ArgumentError("state is not a torus point");
    return *t;
}

inline const SymbolState& as_symbol(const State& s) {
    const auto* t = std::get_if<SymbolState>(&unwrap_union(s).v);
    if (!t) throw ArgumentError("state is not a symbol sequence");
    return *t;
}

inline const CyclicState& as_cyclic(const State& s) {
    const auto* t = std::get_if<CyclicState>(&unwrap_union(s).v);
    if (!t) throw ArgumentError("state is not a cyclic residue");
    return *t;
}

inline const ProductState& as_product(const State& s) {
    const auto* t = std::get_if<ProductState>(&unwrap_union(s).v);
    if (!t) throw ArgumentError("state is not a product point");
    return *t;
}

// Projection point in the declared Kronecker group.
struct KroneckerPoint {
    enum class Kind { trivial, torus, finite };
    Kind kind = Kind::trivial;
    std::vector<double> z;  // torus coordinates
    int64_t residue = 0;    // finite group element
    int64_t modulus = 1;
};

KroneckerPoint kronecker_shift(const KroneckerPoint& z, const std::vector<double>& dz);

}  // namespace ergolab
