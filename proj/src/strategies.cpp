#include <stdexcept>

#include "prophet/game.hpp"
#include "prophet/rng.hpp"

namespace prophet {

namespace {

class WaitThenTrigger final : public Strategy {
public:
    std::string_view name() const override { return "trigger"; }
    void begin(const GameSetup& setup) override { setup_ = setup; }
    Decision decide(std::uint64_t i, const TorusPoint& p, const PrefixView& prefix) override {
        return wait_then_trigger_decide(i, p, prefix, setup_.n, setup_.suffix, setup_.radius);
    }

private:
    GameSetup setup_;
};

class PickFirst final : public Strategy {
public:
    std::string_view name() const override { return "first"; }
    void begin(const GameSetup&) override {}
    Decision decide(std::uint64_t, const TorusPoint&, const PrefixView&) override {
        return Decision::pick;
    }
};

// Draws its target index in [1, n] from the strategy substream up front.
class PickUniformIndex final : public Strategy {
public:
    std::string_view name() const override { return "uniform"; }
    void begin(const GameSetup& setup) override {
        Rng rng(setup.strategy_seed);
        target_ = 1 + rng.uniform_index(setup.n);
    }
    Decision decide(std::uint64_t i, const TorusPoint&, const PrefixView&) override {
        return i == target_ ? Decision::pick : Decision::skip;
    }

private:
    std::uint64_t target_ = 1;
};

// Never picks; the engine's fallback takes p_n.
class PickLast final : public Strategy {
public:
    std::string_view name() const override { return "last"; }
    void begin(const GameSetup&) override {}
    Decision decide(std::uint64_t, const TorusPoint&, const PrefixView&) override {
        return Decision::skip;
    }
};

}  // namespace

std::unique_ptr<Strategy> make_strategy(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::wait_then_trigger:
            return std::make_unique<WaitThenTrigger>();
        case StrategyKind::pick_first:
            return std::make_unique<PickFirst>();
        case StrategyKind::pick_uniform_index:
            return std::make_unique<PickUniformIndex>();
        case StrategyKind::pick_last:
            return std::make_unique<PickLast>();
    }
    throw std::invalid_argument("unknown strategy");
}

StrategyKind parse_strategy_kind(std::string_view name) {
    if (name == "trigger") return StrategyKind::wait_then_trigger;
    if (name == "first") return StrategyKind::pick_first;
    if (name == "uniform") return StrategyKind::pick_uniform_index;
    if (name == "last") return StrategyKind::pick_last;
    throw std::invalid_argument("unknown strategy: " + std::string(name));
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::wait_then_trigger:
            return "trigger";
        case StrategyKind::pick_first:
            return "first";
        case StrategyKind::pick_uniform_index:
            return "uniform";
        case StrategyKind::pick_last:
            return "last";
    }
    return "?";
}

}  // namespace prophet
