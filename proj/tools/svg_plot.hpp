// Copyright 2026 The steerlab Authors
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


#ifndef STEERLAB_TOOLS_SVG_PLOT_HPP
#define STEERLAB_TOOLS_SVG_PLOT_HPP

#include <string>
#include <vector>

#include "steerlab/tomosim.hpp"

namespace steerlab::tools {

/// Standalone SVG with one panel per metric (fraction, robustness) against
/// the imbalance. Exact values are drawn as lines, reconstructed means as
/// markers with one-standard-deviation error bars when present.
std::string sweep_to_svg(const std::vector<SweepRow>& rows);

}  // namespace steerlab::tools

#endif  // STEERLAB_TOOLS_SVG_PLOT_HPP
