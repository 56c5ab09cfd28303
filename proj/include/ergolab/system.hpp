#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/state.hpp"

namespace ergolab {

// Declarative description of a system in the zoo. Validated by make_system.
struct SystemSpec {
    enum class Kind { rotation, torus_rotation, skew_product, bernoulli, cyclic, product, power };
    Kind kind = Kind::rotation;

    double alpha = 0.0;                           // rotation, skew_product
    std::vector<double> alphas;                   // torus_rotation
    std::vector<double> symbol_values = {1, -1};  // bernoulli
    std::vector<double> probs = {0.5, 0.5};
    int64_t q = 1;  // cyclic
    int64_t c = 1;  // power exponent
    std::vector<SystemSpec> children;

    static SystemSpec rotation_of(double alpha);
    static SystemSpec torus_rotation_of(std::vector<double> alphas);
    static SystemSpec skew_of(double alpha);
    static SystemSpec bernoulli_of(std::vector<double> values, std::vector<double> probs);
    static SystemSpec bernoulli_pm1();
    static SystemSpec cyclic_of(int64_t q);
    static SystemSpec product_of(SystemSpec left, SystemSpec right);
    static SystemSpec power_of(SystemSpec base, int64_t c);
};

struct WeightedState {
    State state;
    double weight;
};

/**
 * Concrete invertible measure-preserving system. Immutable after
 * construction and safe to share across threads. T^n is defined by the
 * closed-form advance(); for torus kinds that is n*alpha mod 1 in
 * compensated arithmetic, so long orbits do not drift.
 */
class System {
public:
    virtual ~System() = default;

    virtual std::string name() const = 0;
    virtual State advance(const State& s, int64_t n) const = 0;
    State step(const State& s) const { return advance(s, 1); }
    State step_back(const State& s) const { return advance(s, -1); }
    virtual bool invertible() const { return true; }

    // i.i.d. draw from the declared invariant measure
    virtual State sample(Rng& rng) const = 0;

    // Declared ergodicity; the orbit-backend estimators require it.
    virtual bool ergodic() const = 0;

    // Least p > 0 with T^p = id, when the system is finite.
    virtual std::optional<int64_t> period() const { return std::nullopt; }

    // Full atom list with invariant weights, when the state space is finite
    // and small enough to enumerate.
    virtual std::optional<std::vector<WeightedState>> atoms() const { return std::nullopt; }

    virtual bool has_kronecker() const { return false; }
    virtual KroneckerPoint::Kind kronecker_kind() const { return KroneckerPoint::Kind::trivial; }
    virtual size_t kronecker_dim() const { return 0; }
    virtual KroneckerPoint kronecker(const State&) const;
    virtual State sample_fiber(const KroneckerPoint&, Rng&) const;

    // union structure, when present
    virtual std::span<const std::shared_ptr<const System>> components() const { return {}; }
    virtual std::span<const double> component_weights() const { return {}; }
};

using SystemPtr = std::shared_ptr<const System>;

SystemPtr make_system(const SystemSpec& spec);

SystemPtr make_power(SystemPtr base, int64_t c);
SystemPtr make_product(SystemPtr left, SystemPtr right);

// Explicit finite disjoint union (the only supported non-ergodic inputs).
// Not reachable from SystemSpec; library/test surface only.
SystemPtr make_union(std::vector<SystemPtr> components, std::vector<double> weights);

// Symbol table shared by the bernoulli system and its observables:
// u ~ U[0,1) at (key, index), mapped through the alphabet's CDF.
double bernoulli_symbol(uint64_t key, int64_t index, std::span<const double> cum_probs,
                        std::span<const double> values);

// Cumulative table for the symbol lookup; the system and any symbol
// observable must build it the same way so they agree bit-for-bit.
std::vector<double> bernoulli_cum(std::span<const double> probs);

inline std::vector<State> sample_invariant(const System& sys, Rng& rng, int64_t count) {
    require_arg(count >= 1, "sample count must be >= 1");
    std::vector<State> out;
    out.reserve(static_cast<size_t>(count));
    for (int64_t i = 0; i < count; ++i) out.push_back(sys.sample(rng));
    return out;
}

}  // namespace ergolab
