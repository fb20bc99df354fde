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

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace qubus {

/// Philox4x32-10 counter-based generator. Key = seed, counter = (stream, draw).
class Philox {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::string_view kName = "philox4x32-10";
  static constexpr std::string_view kVersion = "1";

  static Block generate(Block counter, Key key);

  Philox(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in (0, 1).
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();

 private:
  Key key_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
  Block buf_{};
  int buf_pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qubus
