#pragma once

#include <stdexcept>
#include <string>

namespace deckgroup {

struct zero_vector_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct singular_matrix_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct bad_degree_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct degenerate_triple_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct value_set_not_preserved_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical breakdown while building or checking a group; not a usage error.
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct lift_verification_error : verification_error {
    using verification_error::verification_error;
};

struct projection_verification_error : verification_error {
    using verification_error::verification_error;
};

struct not_a_group_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct unrecognized_group_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct power_map_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct oracle_too_large_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct degenerate_map_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace deckgroup
