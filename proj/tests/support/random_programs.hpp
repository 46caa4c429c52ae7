#pragma once

#include <random>

#include "bss/program.hpp"

namespace bss::testkit {

struct RandomProgramOptions {
  TestLevel level = TestLevel::Order;
  bool oracle = false;
  std::size_t max_length = 12;
  std::size_t registers = 4;
  std::size_t indices = 2;
  /// Chance of declaring more index registers than referenced.
  double extra_indices = 0.1;
  /// Bias jump targets forward so that more programs halt.
  bool forward_jumps = false;
};

Program random_program(std::mt19937_64& rng, const RandomProgramOptions& options = {});

}  // namespace bss::testkit
