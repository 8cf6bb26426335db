// Copyright 2026 The evollm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/error.hpp"
#include "strategies/strategy.hpp"

namespace evollm {

std::unique_ptr<Strategy> make_strategy(const StrategyConfig& config,
                                        const SearchBounds& bounds,
                                        std::size_t population_size,
                                        std::uint64_t seed,
                                        std::shared_ptr<Backend> backend,
                                        const BackendConfig* backend_config) {
  if (config.name == "random_search") {
    return std::make_unique<RandomSearch>(bounds, population_size, config, seed);
  }
  if (config.name == "hill_climb") {
    return std::make_unique<HillClimb>(bounds, population_size, config, seed);
  }
  if (config.name == "snes") {
    return std::make_unique<Snes>(bounds, population_size, config, seed);
  }
  if (config.name == "evollm") {
    const BackendConfig defaults;
    const BackendConfig& bc = backend_config ? *backend_config : defaults;
    return std::make_unique<EvoLlm>(bounds, population_size, config, seed,
                                    std::move(backend), bc.temperature_low,
                                    bc.temperature_high);
  }
  throw ConfigError("unknown strategy '" + config.name + "'");
}

}  // namespace evollm
