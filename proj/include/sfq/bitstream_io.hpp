// Copyright 2026 The sfqgate Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sfq/propagator.hpp"
#include "sfq/system.hpp"

namespace sfq {

/// Text bitstream file: for each channel a header line
///   # channel=<qubit>:<axis> cycles=<N> clock_ps=<float>
/// followed by one line of N '0'/'1' characters.
struct BitstreamFile {
  std::vector<ControlChannel> channels;  ///< tip angles are not stored (0)
  double clock_ps = 8.0;
  PulseSchedule schedule;

  bool operator==(const BitstreamFile&) const = default;
};

std::string format_bitstream(const BitstreamFile& file);
BitstreamFile parse_bitstream(const std::string& text);

void write_bitstream(const std::filesystem::path& path, const BitstreamFile& file);
BitstreamFile read_bitstream(const std::filesystem::path& path);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace sfq
