// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mcradar {

struct invalid_parameter_error : std::invalid_argument {
    explicit invalid_parameter_error(const std::string &msg) : std::invalid_argument(msg) {}
};

struct invalid_scene_error : std::invalid_argument {
    explicit invalid_scene_error(const std::string &msg) : std::invalid_argument(msg) {}
};

struct degenerate_input_error : std::invalid_argument {
    explicit degenerate_input_error(const std::string &msg) : std::invalid_argument(msg) {}
};

struct unbounded_supremum_error : std::domain_error {
    explicit unbounded_supremum_error(const std::string &msg) : std::domain_error(msg) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace mcradar
