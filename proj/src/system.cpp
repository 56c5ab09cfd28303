#include "ergolab/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ergolab/numeric.hpp"

namespace ergolab {

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int64_t positive_mod(int64_t a, int64_t q) {
    int64_t r = a % q;
    return r < 0 ? r + q : r;
}

// n(n-1)/2 exactly; |n| <= 1e8 keeps the result under 2^53
double triangular(int64_t n) {
    require_arg(std::llabs(n) <= 100'000'000, "orbit index too large for skew closed form");
    int64_t m = (n % 2 == 0) ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
    return static_cast<double>(m);
}

class RotationSystem final : public System {
public:
    explicit RotationSystem(double alpha) : alpha_(frac_unit(alpha)) {}

    std::string name() const override { return "rotation(alpha=" + fmt_double(alpha_) + ")"; }

    State advance(const State& s, int64_t n) const override {
        const auto& t = as_torus(s);
        return make_torus_state({frac_unit(t.x.at(0) + mul_mod1(static_cast<double>(n), alpha_))});
    }

    State sample(Rng& rng) const override { return make_torus_state({rng.next_unit()}); }
    bool ergodic() const override { return true; }

    bool has_kronecker() const override { return true; }
    KroneckerPoint::Kind kronecker_kind() const override { return KroneckerPoint::Kind::torus; }
    size_t kronecker_dim() const override { return 1; }

    KroneckerPoint kronecker(const State& s) const override {
        return KroneckerPoint{KroneckerPoint::Kind::torus, {as_torus(s).x.at(0)}, 0, 1};
    }

    State sample_fiber(const KroneckerPoint& z, Rng&) const override {
        require_arg(z.kind == KroneckerPoint::Kind::torus && z.z.size() == 1,
                    "fiber point must lie on the 1-torus");
        return make_torus_state({frac_unit(z.z[0])});
    }

    double alpha() const { return alpha_; }

private:
    double alpha_;
};

class TorusRotationSystem final : public System {
public:
    explicit TorusRotationSystem(std::vector<double> alphas) : alphas_(std::move(alphas)) {
        require_arg(!alphas_.empty(), "torus_rotation needs at least one frequency");
        for (double& a : alphas_) a = frac_unit(a);
    }

    std::string name() const override {
        std::string s = "torus_rotation(";
        for (size_t i = 0; i < alphas_.size(); ++i) s += (i ? "," : "") + fmt_double(alphas_[i]);
        return s + ")";
    }

    State advance(const State& s, int64_t n) const override {
        const auto& t = as_torus(s);
        require_arg(t.x.size() == alphas_.size(), "state dimension mismatch");
        std::vector<double> out(alphas_.size());
        for (size_t i = 0; i < alphas_.size(); ++i)
            out[i] = frac_unit(t.x[i] + mul_mod1(static_cast<double>(n), alphas_[i]));
        return make_torus_state(std::move(out));
    }

    State sample(Rng& rng) const override {
        std::vector<double> out(alphas_.size());
        for (double& c : out) c = rng.next_unit();
        return make_torus_state(std::move(out));
    }

    bool ergodic() const override { return true; }  // declared: rationally independent frequencies

    bool has_kronecker() const override { return true; }
    KroneckerPoint::Kind kronecker_kind() const override { return KroneckerPoint::Kind::torus; }
    size_t kronecker_dim() const override { return alphas_.size(); }

    KroneckerPoint kronecker(const State& s) const override {
        return KroneckerPoint{KroneckerPoint::Kind::torus, as_torus(s).x, 0, 1};
    }

    State sample_fiber(const KroneckerPoint& z, Rng&) const override {
        require_arg(z.kind == KroneckerPoint::Kind::torus && z.z.size() == alphas_.size(),
                    "fiber point dimension mismatch");
        std::vector<double> out = z.z;
        for (double& c : out) c = frac_unit(c);
        return make_torus_state(std::move(out));
    }

private:
    std::vector<double> alphas_;
};

// T(x, y) = (x + alpha, y + x); T^n(x, y) = (x + n alpha, y + n x + n(n-1)/2 alpha)
class SkewProductSystem final : public System {
public:
    explicit SkewProductSystem(double alpha) : alpha_(frac_unit(alpha)) {}

    std::string name() const override { return "skew_product(alpha=" + fmt_double(alpha_) + ")"; }

    State advance(const State& s, int64_t n) const override {
        const auto& t = as_torus(s);
        require_arg(t.x.size() == 2, "skew product state must be 2-dimensional");
        double nn = static_cast<double>(n);
        double x1 = frac_unit(t.x[0] + mul_mod1(nn, alpha_));
        double y1 = frac_unit(frac_unit(t.x[1] + mul_mod1(nn, t.x[0])) + mul_mod1(triangular(n), alpha_));
        return make_torus_state({x1, y1});
    }

    State sample(Rng& rng) const override {
        double a = rng.next_unit();
        double b = rng.next_unit();
        return make_torus_state({a, b});
    }

    bool ergodic() const override { return true; }

    bool has_kronecker() const override { return true; }
    KroneckerPoint::Kind kronecker_kind() const override { return KroneckerPoint::Kind::torus; }
    size_t kronecker_dim() const override { return 1; }

    KroneckerPoint kronecker(const State& s) const override {
        return KroneckerPoint{KroneckerPoint::Kind::torus, {as_torus(s).x.at(0)}, 0, 1};
    }

    // mu_z = uniform on the fiber {z} x T
    State sample_fiber(const KroneckerPoint& z, Rng& rng) const override {
        require_arg(z.kind == KroneckerPoint::Kind::torus && z.z.size() == 1,
                    "fiber point must lie on the 1-torus");
        return make_torus_state({frac_unit(z.z[0]), rng.next_unit()});
    }

private:
    double alpha_;
};

class BernoulliSystem final : public System {
public:
    BernoulliSystem(std::vector<double> values, std::vector<double> probs)
        : values_(std::move(values)), probs_(std::move(probs)) {
        require_arg(!values_.empty(), "bernoulli alphabet must be nonempty");
        require_arg(values_.size() == probs_.size(), "bernoulli values/probs size mismatch");
        double total = 0.0;
        for (double p : probs_) {
            require_arg(p >= 0.0, "bernoulli probabilities must be nonnegative");
            total += p;
        }
        require_arg(std::abs(total - 1.0) <= 1e-12, "bernoulli probabilities must sum to 1");
        cum_ = bernoulli_cum(probs_);
    }

    std::string name() const override { return "bernoulli(" + std::to_string(values_.size()) + " symbols)"; }

    State advance(const State& s, int64_t n) const override {
        const auto& b = as_symbol(s);
        return make_symbol_state(b.key, b.offset + n);
    }

    State sample(Rng& rng) const override { return make_symbol_state(rng.next_u64(), 0); }
    bool ergodic() const override { return true; }

    bool has_kronecker() const override { return true; }
    KroneckerPoint::Kind kronecker_kind() const override { return KroneckerPoint::Kind::trivial; }

    KroneckerPoint kronecker(const State&) const override { return KroneckerPoint{}; }

    // trivial factor: the fiber is the whole space
    State sample_fiber(const KroneckerPoint& z, Rng& rng) const override {
        require_arg(z.kind == KroneckerPoint::Kind::trivial, "bernoulli Kronecker factor is trivial");
        return make_symbol_state(rng.next_u64(), 0);
    }

    std::span<const double> cum() const { return cum_; }
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> values_;
    std::vector<double> probs_;
    std::vector<double> cum_;
};

class CyclicSystem final : public System {
public:
    explicit CyclicSystem(int64_t q) : q_(q) { require_arg(q >= 1, "cyclic order must be >= 1"); }

    std::string name() const override { return "cyclic(q=" + std::to_string(q_) + ")"; }

    State advance(const State& s, int64_t n) const override {
        const auto& c = as_cyclic(s);
        require_arg(c.q == q_, "cyclic state modulus mismatch");
        return make_cyclic_state(positive_mod(c.j + positive_mod(n, q_), q_), q_);
    }

    State sample(Rng& rng) const override {
        return make_cyclic_state(static_cast<int64_t>(rng.next_u64() % static_cast<uint64_t>(q_)), q_);
    }

    bool ergodic() const override { return true; }
    std::optional<int64_t> period() const override { return q_; }

    std::optional<std::vector<WeightedState>> atoms() const override {
        if (q_ > 65536) return std::nullopt;
        std::vector<WeightedState> out;
        out.reserve(static_cast<size_t>(q_));
        double w = 1.0 / static_cast<double>(q_);
        for (int64_t j = 0; j < q_; ++j) out.push_back({make_cyclic_state(j, q_), w});
        return out;
    }

    bool has_kronecker() const override { return true; }
    KroneckerPoint::Kind kronecker_kind() const override { return KroneckerPoint::Kind::finite; }

    KroneckerPoint kronecker(const State& s) const override {
        const auto& c = as_cyclic(s);
        return KroneckerPoint{KroneckerPoint::Kind::finite, {}, c.j, q_};
    }

    State sample_fiber(const KroneckerPoint& z, Rng&) const override {
        require_arg(z.kind == KroneckerPoint::Kind::finite && z.modulus == q_,
                    "fiber point must be a residue mod q");
        return make_cyclic_state(positive_mod(z.residue, q_), q_);
    }

private:
    int64_t q_;
};

class ProductSystem final : public System {
public:
    ProductSystem(SystemPtr left, SystemPtr right) : left_(std::move(left)), right_(std::move(right)) {}

    std::string name() const override { return "product(" + left_->name() + ", " + right_->name() + ")"; }

    State advance(const State& s, int64_t n) const override {
        const auto& p = as_product(s);
        require_arg(p.parts.size() == 2, "product state must have two parts");
        ProductState out;
        out.parts = {left_->advance(p.parts[0], n), right_->advance(p.parts[1], n)};
        return State{std::move(out)};
    }

    State sample(Rng& rng) const override {
        ProductState out;
        State a = left_->sample(rng);
        State b = right_->sample(rng);
        out.parts = {std::move(a), std::move(b)};
        return State{std::move(out)};
    }

    // Not certified: e.g. two equal rotations are not jointly ergodic.
    bool ergodic() const override { return false; }

    std::optional<int64_t> period() const override {
        auto pl = left_->period();
        auto pr = right_->period();
        if (!pl || !pr) return std::nullopt;
        int64_t g = gcd_i64(*pl, *pr);
        int64_t l = (*pl / g) * (*pr);
        if (l > 1'000'000) return std::nullopt;
        return l;
    }

    std::optional<std::vector<WeightedState>> atoms() const override {
        auto al = left_->atoms();
        auto ar = right_->atoms();
        if (!al || !ar) return std::nullopt;
        if (al->size() * ar->size() > 65536) return std::nullopt;
        std::vector<WeightedState> out;
        out.reserve(al->size() * ar->size());
        for (const auto& a : *al)
            for (const auto& b : *ar) {
                ProductState ps;
                ps.parts = {a.state, b.state};
                out.push_back({State{std::move(ps)}, a.weight * b.weight});
            }
        return out;
    }

private:
    SystemPtr left_, right_;
};

class PowerSystem final : public System {
public:
    PowerSystem(SystemPtr base, int64_t c) : base_(std::move(base)), c_(c) {
        require_arg(c_ != 0, "power exponent must be non-zero");
    }

    std::string name() const override { return "power(" + base_->name() + ", c=" + std::to_string(c_) + ")"; }

    // T^c stepped n times is exactly the base at index c*n
    State advance(const State& s, int64_t n) const override { return base_->advance(s, c_ * n); }

    State sample(Rng& rng) const override { return base_->sample(rng); }

    bool ergodic() const override {
        if (!base_->ergodic()) return false;
        if (auto p = base_->period()) return gcd_i64(*p, c_) == 1;
        return true;  // irrational rotations, skew, bernoulli: powers stay ergodic
    }

    std::optional<int64_t> period() const override {
        if (auto p = base_->period()) return *p / gcd_i64(*p, c_);
        return std::nullopt;
    }

    std::optional<std::vector<WeightedState>> atoms() const override { return base_->atoms(); }

    bool has_kronecker() const override { return base_->has_kronecker(); }
    KroneckerPoint::Kind kronecker_kind() const override { return base_->kronecker_kind(); }
    size_t kronecker_dim() const override { return base_->kronecker_dim(); }
    KroneckerPoint kronecker(const State& s) const override { return base_->kronecker(s); }
    State sample_fiber(const KroneckerPoint& z, Rng& rng) const override { return base_->sample_fiber(z, rng); }

private:
    SystemPtr base_;
    int64_t c_;
};

class UnionSystem final : public System {
public:
    UnionSystem(std::vector<SystemPtr> comps, std::vector<double> weights)
        : comps_(std::move(comps)), weights_(std::move(weights)) {
        require_arg(!comps_.empty(), "union needs at least one component");
        require_arg(comps_.size() == weights_.size(), "union components/weights size mismatch");
        double total = 0.0;
        for (double w : weights_) {
            require_arg(w > 0.0, "union weights must be positive");
            total += w;
        }
        require_arg(std::abs(total - 1.0) <= 1e-12, "union weights must sum to 1");
    }

    std::string name() const override {
        std::string s = "union(";
        for (size_t i = 0; i < comps_.size(); ++i) s += (i ? ", " : "") + comps_[i]->name();
        return s + ")";
    }

    State advance(const State& s, int64_t n) const override {
        const auto* u = std::get_if<UnionState>(&s.v);
        require_arg(u != nullptr && u->component < comps_.size(), "state is not a union point");
        UnionState out;
        out.component = u->component;
        out.inner = {comps_[u->component]->advance(u->inner.front(), n)};
        return State{std::move(out)};
    }

    State sample(Rng& rng) const override {
        double u = rng.next_unit();
        size_t idx = 0;
        double acc = 0.0;
        for (size_t i = 0; i < weights_.size(); ++i) {
            acc += weights_[i];
            if (u < acc) {
                idx = i;
                break;
            }
            idx = i;
        }
        UnionState out;
        out.component = idx;
        out.inner = {comps_[idx]->sample(rng)};
        return State{std::move(out)};
    }

    bool ergodic() const override { return false; }

    std::optional<std::vector<WeightedState>> atoms() const override {
        std::vector<WeightedState> out;
        for (size_t i = 0; i < comps_.size(); ++i) {
            auto a = comps_[i]->atoms();
            if (!a) return std::nullopt;
            for (auto& ws : *a) {
                UnionState u;
                u.component = i;
                u.inner = {std::move(ws.state)};
                out.push_back({State{std::move(u)}, ws.weight * weights_[i]});
            }
        }
        if (out.size() > 65536) return std::nullopt;
        return out;
    }

    std::span<const SystemPtr> components() const override { return comps_; }
    std::span<const double> component_weights() const override { return weights_; }

private:
    std::vector<SystemPtr> comps_;
    std::vector<double> weights_;
};

}  // namespace

KroneckerPoint System::kronecker(const State&) const {
    throw UnsupportedError("system '" + name() + "' has no declared Kronecker factor");
}

State System::sample_fiber(const KroneckerPoint&, Rng&) const {
    throw UnsupportedError("system '" + name() + "' has no declared disintegration");
}

double bernoulli_symbol(uint64_t key, int64_t index, std::span<const double> cum_probs,
                        std::span<const double> values) {
    double u = Rng::to_unit(hash2(key, zigzag(index)));
    for (size_t i = 0; i < cum_probs.size(); ++i)
        if (u < cum_probs[i]) return values[i];
    return values.back();
}

std::vector<double> bernoulli_cum(std::span<const double> probs) {
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cum[i] = acc;
    }
    cum.back() = 1.0 + 1e-9;  // absorb rounding at the top
    return cum;
}

SystemSpec SystemSpec::rotation_of(double alpha) {
    SystemSpec s;
    s.kind = Kind::rotation;
    s.alpha = alpha;
    return s;
}

SystemSpec SystemSpec::torus_rotation_of(std::vector<double> alphas) {
    SystemSpec s;
    s.kind = Kind::torus_rotation;
    s.alphas = std::move(alphas);
    return s;
}

SystemSpec SystemSpec::skew_of(double alpha) {
    SystemSpec s;
    s.kind = Kind::skew_product;
    s.alpha = alpha;
    return s;
}

SystemSpec SystemSpec::bernoulli_of(std::vector<double> values, std::vector<double> probs) {
    SystemSpec s;
    s.kind = Kind::bernoulli;
    s.symbol_values = std::move(values);
    s.probs = std::move(probs);
    return s;
}

SystemSpec SystemSpec::bernoulli_pm1() { return bernoulli_of({1.0, -1.0}, {0.5, 0.5}); }

SystemSpec SystemSpec::cyclic_of(int64_t q) {
    SystemSpec s;
    s.kind = Kind::cyclic;
    s.q = q;
    return s;
}

SystemSpec SystemSpec::product_of(SystemSpec left, SystemSpec right) {
    SystemSpec s;
    s.kind = Kind::product;
    s.children.push_back(std::move(left));
    s.children.push_back(std::move(right));
    return s;
}

SystemSpec SystemSpec::power_of(SystemSpec base, int64_t c) {
    SystemSpec s;
    s.kind = Kind::power;
    s.c = c;
    s.children.push_back(std::move(base));
    return s;
}

SystemPtr make_system(const SystemSpec& spec) {
    using Kind = SystemSpec::Kind;
    switch (spec.kind) {
        case Kind::rotation:
            require_arg(std::isfinite(spec.alpha), "rotation frequency must be finite");
            return std::make_shared<RotationSystem>(spec.alpha);
        case Kind::torus_rotation:
            return std::make_shared<TorusRotationSystem>(spec.alphas);
        case Kind::skew_product:
            require_arg(std::isfinite(spec.alpha), "skew frequency must be finite");
            return std::make_shared<SkewProductSystem>(spec.alpha);
        case Kind::bernoulli:
            return std::make_shared<BernoulliSystem>(spec.symbol_values, spec.probs);
        case Kind::cyclic:
            return std::make_shared<CyclicSystem>(spec.q);
        case Kind::product:
            require_arg(spec.children.size() == 2, "product spec needs two children");
            return std::make_shared<ProductSystem>(make_system(spec.children[0]), make_system(spec.children[1]));
        case Kind::power:
            require_arg(spec.children.size() == 1, "power spec needs one child");
            require_arg(spec.c != 0, "power exponent must be non-zero");
            return std::make_shared<PowerSystem>(make_system(spec.children[0]), spec.c);
    }
    throw ConfigError("unknown system kind");
}

SystemPtr make_power(SystemPtr base, int64_t c) {
    return std::make_shared<PowerSystem>(std::move(base), c);
}

SystemPtr make_product(SystemPtr left, SystemPtr right) {
    return std::make_shared<ProductSystem>(std::move(left), std::move(right));
}

SystemPtr make_union(std::vector<SystemPtr> components, std::vector<double> weights) {
    return std::make_shared<UnionSystem>(std::move(components), std::move(weights));
}

KroneckerPoint kronecker_shift(const KroneckerPoint& z, const std::vector<double>& dz) {
    require_arg(z.kind == KroneckerPoint::Kind::torus, "only torus Kronecker points can be shifted");
    require_arg(z.z.size() == dz.size(), "Kronecker shift dimension mismatch");
    KroneckerPoint out = z;
    for (size_t i = 0; i < dz.size(); ++i) out.z[i] = frac_unit(out.z[i] + dz[i]);
    return out;
}

}  // namespace ergolab
