// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "gaussent/covariance.hpp"
#include "gaussent/schemes.hpp"

namespace gaussent {

/// A state file holds either representation.
using StateData = std::variant<QuadCovariance, ModeCovariance>;

/// {"format": "quad", "entries": [16 reals, row-major]} or
/// {"format": "mode", "entries": {"n1", "n2", "m1", "m2", "ms", "mc"}}
/// with complex values written as [re, im].
std::string state_to_json(const StateData& state);
StateData state_from_json(const std::string& text);

StateData load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const StateData& state);

QuadCovariance to_quad(const StateData& state);
ModeCovariance to_mode(const StateData& state);

/// {"format": "transcript", "records": [{"theta", "phi", "observable": "N"|"J",
/// "value", "stderr"?, "cov_nj"?}, ...]}
std::string transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const std::string& text);

}  // namespace gaussent
