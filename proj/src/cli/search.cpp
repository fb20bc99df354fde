// Copyright 2026 The qubus Authors
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

#include "qubus/cli.hpp"

namespace qubus::cli {

json to_json(const SearchResult& r, bool found) {
  json seq = json::array();
  for (const auto& op : r.sequence) seq.push_back(to_string(op));
  json grid = json::array();
  for (const auto& g : sequence_grid()) grid.push_back({{"alpha", g.alpha}, {"theta", g.theta}});
  json out{{"schema", kSchema},
           {"target", r.target},
           {"found", found},
           {"examined", r.examined},
           {"grid", std::move(grid)}};
  if (found) {
    out["sequence"] = std::move(seq);
    out["residual"] = r.residual;
    out["multiplicity"] = r.multiplicity;
    out["total_matches"] = r.total_matches;
  }
  return out;
}

}  // namespace qubus::cli
