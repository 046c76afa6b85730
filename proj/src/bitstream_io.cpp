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

#include "sfq/bitstream_io.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace sfq {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_bitstream(const BitstreamFile& file) {
  if (static_cast<int>(file.channels.size()) != file.schedule.num_channels()) {
    throw Error("bitstream: channel list does not match schedule");
  }
  std::ostringstream os;
  const int n = file.schedule.num_cycles();
  for (std::size_t c = 0; c < file.channels.size(); ++c) {
    os << "# channel=" << file.channels[c].qubit << ':' << to_string(file.channels[c].axis)
       << " cycles=" << n << " clock_ps=" << format_double(file.clock_ps) << '\n';
    for (auto b : file.schedule.channel(static_cast<int>(c))) os << static_cast<char>('0' + b);
    os << '\n';
  }
  return os.str();
}

BitstreamFile parse_bitstream(const std::string& text) {
  static const std::regex header(
      R"(# channel=(\d+):([xzXZ]) cycles=(\d+) clock_ps=([0-9eE+\-.]+))");
  std::istringstream is(text);
  std::string line;
  BitstreamFile file;
  std::vector<std::string> rows;
  int cycles = -1;
  bool have_clock = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::smatch m;
    if (!std::regex_match(line, m, header)) throw Error("bitstream: malformed header '" + line + "'");
    ControlChannel ch;
    ch.qubit = std::stoi(m[1]);
    ch.axis = parse_axis(m[2].str());
    const int n = std::stoi(m[3]);
    double clock = 0.0;
    const std::string clock_text = m[4];
    auto res = std::from_chars(clock_text.data(), clock_text.data() + clock_text.size(), clock);
    if (res.ec != std::errc() || res.ptr != clock_text.data() + clock_text.size()) {
      throw Error("bitstream: bad clock_ps '" + clock_text + "'");
    }
    if (cycles >= 0 && n != cycles) throw Error("bitstream: channels disagree on cycle count");
    if (have_clock && clock != file.clock_ps) throw Error("bitstream: channels disagree on clock");
    cycles = n;
    file.clock_ps = clock;
    have_clock = true;
    if (!std::getline(is, line)) throw Error("bitstream: missing bit line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != n) throw Error("bitstream: bit line length != cycles");
    if (line.find_first_not_of("01") != std::string::npos) throw Error("bitstream: invalid bit character");
    file.channels.push_back(ch);
    rows.push_back(line);
  }
  if (rows.empty()) throw Error("bitstream: no channels");
  file.schedule = PulseSchedule(static_cast<int>(rows.size()), std::max(cycles, 0));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    for (int t = 0; t < cycles; ++t) file.schedule.set(static_cast<int>(c), t, rows[c][t] == '1');
  }
  return file;
}

void write_bitstream(const std::filesystem::path& path, const BitstreamFile& file) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << format_bitstream(file);
}

BitstreamFile read_bitstream(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_bitstream(ss.str());
}

}  // namespace sfq
