// Copyright 2026 The annealab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "annealab/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace annealab {

namespace {

bool is_blank_or_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::string at(const std::string& source, std::size_t lineno) {
  return source + ":" + std::to_string(lineno);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::vector<VertexId> read_broken_mask(std::istream& in, const std::string& source) {
  std::vector<VertexId> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    long long v = -1;
    std::string rest;
    if (!(ss >> v) || (ss >> rest) || v < 0 || v > 0xffffffffll) {
      throw ValidationError(at(source, lineno) + ": expected one non-negative vertex id");
    }
    ids.push_back(static_cast<VertexId>(v));
  }
  return ids;
}

std::vector<VertexId> load_broken_mask(const std::string& path) {
  auto in = open_in(path);
  return read_broken_mask(in, path);
}

void write_instance(std::ostream& out, const IsingInstance& instance) {
  const auto& topo = instance.topology();
  out << "# topology " << topo.shape_string() << '\n';
  if (!topo.broken().empty()) {
    out << "# broken";
    for (VertexId b : topo.broken()) out << ' ' << b;
    out << '\n';
  }
  // Couplings (i < j) and fields (i == i) interleave when sorted by (i, j).
  std::map<std::pair<VertexId, VertexId>, double> lines;
  const auto edges = topo.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) lines[{edges[e].u, edges[e].v}] = instance.coupling(e);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.field(i) != 0.0) lines[{topo.working()[i], topo.working()[i]}] = instance.field(i);
  }
  for (const auto& [key, value] : lines) {
    out << key.first << ' ' << key.second << ' ' << format_number(value) << '\n';
  }
}

IsingInstance read_instance(std::istream& in, TopologyPtr topology, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::string shape;
  std::vector<VertexId> broken;
  struct Entry {
    VertexId i, j;
    double value;
    std::size_t line;
  };
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) {
      std::istringstream ss(line);
      std::string hash, key;
      ss >> hash >> key;
      if (hash == "#" && key == "topology") {
        ss >> shape;
      } else if (hash == "#" && key == "broken") {
        long long v;
        while (ss >> v) broken.push_back(static_cast<VertexId>(v));
      }
      continue;
    }
    std::istringstream ss(line);
    long long i = -1, j = -1;
    double value = 0.0;
    std::string rest;
    if (!(ss >> i >> j >> value) || (ss >> rest) || i < 0 || j < 0) {
      throw ValidationError(at(source, lineno) + ": expected 'i j value'");
    }
    if (i > j) throw ValidationError(at(source, lineno) + ": couplings must have i < j");
    entries.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), value, lineno});
  }
  if (!topology) {
    if (shape.empty()) throw ValidationError(source + ": no '# topology' header and no topology given");
    topology = build_topology(shape, broken);
  }
  IsingInstance instance(topology);
  for (const auto& e : entries) {
    try {
      if (e.i == e.j) {
        instance.set_field(e.i, e.value);
      } else {
        instance.set_coupling(e.i, e.j, e.value);
      }
    } catch (const ValidationError& err) {
      throw ValidationError(at(source, e.line) + ": " + err.what());
    }
  }
  return instance;
}

void save_instance(const std::string& path, const IsingInstance& instance) {
  auto out = open_out(path);
  write_instance(out, instance);
  if (!out) throw IoError("failed writing '" + path + "'");
}

IsingInstance load_instance(const std::string& path, TopologyPtr topology) {
  auto in = open_in(path);
  return read_instance(in, std::move(topology), path);
}

void write_ground_summary(std::ostream& out, const GroundSummary& ground) {
  out << "E0 " << format_number(ground.ground_energy) << '\n';
  out << "D " << ground.degeneracy << '\n';
  out << "truncated " << (ground.truncated ? 1 : 0) << '\n';
  for (const auto& g : ground.ground_set) out << to_hex(g) << '\n';
}

GroundSummary read_ground_summary(std::istream& in, std::size_t spins, const std::string& source) {
  GroundSummary gs;
  std::string line;
  std::size_t lineno = 0;
  int seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "E0") {
      if (!(ss >> gs.ground_energy)) throw ValidationError(at(source, lineno) + ": bad E0");
      seen |= 1;
    } else if (key == "D") {
      if (!(ss >> gs.degeneracy) || gs.degeneracy < 1) throw ValidationError(at(source, lineno) + ": bad D");
      seen |= 2;
    } else if (key == "truncated") {
      int flag = -1;
      if (!(ss >> flag) || (flag != 0 && flag != 1)) {
        throw ValidationError(at(source, lineno) + ": bad truncation flag");
      }
      gs.truncated = flag == 1;
      seen |= 4;
    } else {
      try {
        gs.ground_set.push_back(from_hex(key, spins));
      } catch (const ValidationError& err) {
        throw ValidationError(at(source, lineno) + ": " + err.what());
      }
    }
  }
  if (seen != 7) throw ValidationError(source + ": missing E0, D or truncated line");
  if (gs.ground_set.size() > gs.degeneracy) throw ValidationError(source + ": more configs than D");
  return gs;
}

void save_ground_summary(const std::string& path, const GroundSummary& ground) {
  auto out = open_out(path);
  write_ground_summary(out, ground);
  if (!out) throw IoError("failed writing '" + path + "'");
}

GroundSummary load_ground_summary(const std::string& path, std::size_t spins) {
  auto in = open_in(path);
  return read_ground_summary(in, spins, path);
}

std::string run_record_json(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["instance"] = record.instance;
  j["method"] = record.method;
  j["gauge"] = record.gauge;
  j["run"] = record.run;
  j["seed"] = record.seed;
  j["config_hex"] = to_hex(record.config);
  j["energy"] = record.energy;
  j["gap"] = record.gap;
  return j.dump();
}

RunRecord parse_run_record(const std::string& line, std::size_t spins) {
  return parse_run_record(line, [spins](const std::string&) { return spins; });
}

RunRecord parse_run_record(const std::string& line,
                           const std::function<std::size_t(const std::string&)>& spins_for) {
  try {
    const auto j = nlohmann::json::parse(line);
    RunRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.gauge = j.at("gauge").get<std::uint32_t>();
    r.run = j.at("run").get<std::uint32_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = from_hex(j.at("config_hex").get<std::string>(), spins_for(r.instance));
    r.energy = j.at("energy").get<double>();
    r.gap = j.at("gap").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("run record: ") + e.what());
  }
}

}  // namespace annealab
