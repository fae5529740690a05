#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ttmcmc {

struct DimensionError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct MoveUnavailable : std::logic_error {
    using std::logic_error::logic_error;
};

struct InvalidState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JumpSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BlockMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Variable-dimension state: m related blocks sharing the dimension k.
struct ParamState {
    std::vector<std::vector<double>> blocks;

    ParamState() = default;
    explicit ParamState(std::vector<std::vector<double>> b) : blocks(std::move(b)) {}
    static ParamState single(std::vector<double> x) { return ParamState({std::move(x)}); }

    std::size_t num_blocks() const { return blocks.size(); }
    std::size_t dim() const { return blocks.empty() ? 0 : blocks.front().size(); }

    // Throws BlockMismatch unless every block has the same length.
    void check_blocks() const;

    bool operator==(const ParamState&) const = default;
};

class TargetModel {
public:
    virtual ~TargetModel() = default;
    virtual double log_density(const ParamState& x) const = 0;
    virtual std::size_t num_blocks() const = 0;
    virtual std::size_t k_max() const = 0;
};

// A state paired with its cached log target.
struct ChainPoint {
    ParamState x;
    double log_target = 0.0;
};

ChainPoint make_point(ParamState x, const TargetModel& target);

}  // namespace ttmcmc
