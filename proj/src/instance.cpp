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

#include "annealab/instance.hpp"

#include <algorithm>
#include <random>
#include <cmath>

namespace annealab {

namespace {

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw ValidationError(std::string("instance: non-finite ") + what);
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ValidationError(std::string("instance: ") + what + " has length " + std::to_string(got) +
                          ", expected " + std::to_string(want));
  }
}

}  // namespace

Gauge Gauge::random(std::size_t n, Rng& rng) {
  Gauge g;
  g.signs.resize(n);
  for (auto& a : g.signs) a = fair_coin(rng) ? 1 : -1;
  return g;
}

IsingInstance::IsingInstance(TopologyPtr topology)
    : topology_(std::move(topology)),
      couplings_(topology_->edges().size(), 0.0),
      fields_(topology_->working_count(), 0.0) {}

IsingInstance::IsingInstance(TopologyPtr topology, std::vector<double> couplings,
                             std::vector<double> fields)
    : topology_(std::move(topology)), couplings_(std::move(couplings)), fields_(std::move(fields)) {
  require_size(couplings_.size(), topology_->edges().size(), "coupling vector");
  require_size(fields_.size(), topology_->working_count(), "field vector");
  for (double j : couplings_) require_finite(j, "coupling");
  for (double h : fields_) require_finite(h, "field");
}

void IsingInstance::set_coupling(VertexId u, VertexId v, double value) {
  const auto e = topology_->edge_index(u, v);
  if (e < 0) {
    throw ValidationError("instance: (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") is not an edge of the topology");
  }
  set_coupling_at(static_cast<std::size_t>(e), value);
}

void IsingInstance::set_coupling_at(std::size_t edge, double value) {
  require_finite(value, "coupling");
  if (edge >= couplings_.size()) throw ValidationError("instance: edge index out of range");
  couplings_[edge] = value;
}

void IsingInstance::set_field(VertexId v, double value) {
  set_field_at(topology_->position(v), value);
}

void IsingInstance::set_field_at(std::size_t pos, double value) {
  require_finite(value, "field");
  if (pos >= fields_.size()) throw ValidationError("instance: vertex position out of range");
  fields_[pos] = value;
}

bool IsingInstance::has_nonzero_field() const {
  return std::any_of(fields_.begin(), fields_.end(), [](double h) { return h != 0.0; });
}

IsingInstance random_instance(TopologyPtr topology, Rng& rng) {
  IsingInstance inst(std::move(topology));
  for (std::size_t e = 0; e < inst.couplings().size(); ++e) {
    inst.set_coupling_at(e, fair_coin(rng) ? 1.0 : -1.0);
  }
  return inst;
}

double ising_energy(const IsingInstance& instance, const SpinConfig& config) {
  require_size(config.size(), instance.size(), "spin configuration");
  const auto& topo = instance.topology();
  const auto edges = topo.edges();
  double energy = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    energy += instance.coupling(e) * config[topo.position(edges[e].u)] *
              config[topo.position(edges[e].v)];
  }
  for (std::size_t i = 0; i < instance.size(); ++i) energy += instance.field(i) * config[i];
  return energy;
}

double local_field(const IsingInstance& instance, const SpinConfig& config, std::size_t pos) {
  const auto& adj = instance.topology().adjacency();
  double f = instance.field(pos);
  for (auto e = adj.offset[pos]; e < adj.offset[pos + 1]; ++e) {
    f += instance.coupling(adj.edge[e]) * config[adj.target[e]];
  }
  return f;
}

IsingInstance apply_gauge(const IsingInstance& instance, const Gauge& gauge) {
  require_size(gauge.size(), instance.size(), "gauge");
  const auto& topo = instance.topology();
  const auto edges = topo.edges();
  std::vector<double> j(instance.couplings().begin(), instance.couplings().end());
  std::vector<double> h(instance.fields().begin(), instance.fields().end());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    j[e] *= gauge.signs[topo.position(edges[e].u)] * gauge.signs[topo.position(edges[e].v)];
  }
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= gauge.signs[i];
  return IsingInstance(instance.topology_ptr(), std::move(j), std::move(h));
}

SpinConfig gauge_config(const SpinConfig& config, const Gauge& gauge) {
  require_size(gauge.size(), config.size(), "gauge");
  SpinConfig out = config;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::int8_t>(out[i] * gauge.signs[i]);
  return out;
}

IsingInstance perturb(const IsingInstance& instance, double sigma, Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("perturb: sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return instance;
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> j(instance.couplings().begin(), instance.couplings().end());
  std::vector<double> h(instance.fields().begin(), instance.fields().end());
  for (auto& v : j) v += noise(rng);
  for (auto& v : h) v += noise(rng);
  return IsingInstance(instance.topology_ptr(), std::move(j), std::move(h));
}

IsingInstance apply_crosstalk(const IsingInstance& instance, double chi) {
  if (!std::isfinite(chi)) throw ValidationError("crosstalk: chi must be finite");
  if (chi == 0.0) return instance;
  const auto& topo = instance.topology();
  const auto& adj = topo.adjacency();
  const auto edges = topo.edges();
  std::vector<double> j(instance.couplings().begin(), instance.couplings().end());
  std::vector<double> h(instance.fields().begin(), instance.fields().end());

  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto pi = topo.position(edges[e].u), pj = topo.position(edges[e].v);
    // Rows are sorted by neighbor position: merge to find common neighbors.
    auto a = adj.offset[pi], a_end = adj.offset[pi + 1];
    auto b = adj.offset[pj], b_end = adj.offset[pj + 1];
    double sum = 0.0;
    while (a < a_end && b < b_end) {
      if (adj.target[a] < adj.target[b]) {
        ++a;
      } else if (adj.target[b] < adj.target[a]) {
        ++b;
      } else {
        sum += instance.coupling(adj.edge[a]) * instance.coupling(adj.edge[b]);
        ++a;
        ++b;
      }
    }
    j[e] += chi * sum;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    double sum = 0.0;
    for (auto e = adj.offset[i]; e < adj.offset[i + 1]; ++e) {
      sum += instance.coupling(adj.edge[e]) * instance.field(adj.target[e]);
    }
    h[i] += chi * sum;
  }
  return IsingInstance(instance.topology_ptr(), std::move(j), std::move(h));
}

}  // namespace annealab
