// Copyright 2026 The symstab Authors
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

// JSON documents for SymBasis, SymProjector and Circuit. Complex matrices are
// {"rows", "cols", "data"} with data a row-major list of [re, im] pairs.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "symstab/circuit.hpp"
#include "symstab/symspace.hpp"

namespace symstab::io {

using nlohmann::json;

inline json matrix_to_json(const MatrixXcd& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline MatrixXcd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw DimensionError("matrix JSON: data length does not match rows x cols");
  }
  MatrixXcd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const auto& pair = data.at(k);
      if (!pair.is_array() || pair.size() != 2) {
        throw PreconditionError("matrix JSON: entries must be [re, im] pairs");
      }
      m(i, c) = cplx(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return m;
}

inline json layout_to_json(const HilbertLayout& layout) {
  json out = json::array();
  for (const auto& s : layout.subsystems()) {
    out.push_back({{"label", s.label}, {"dimension", s.dimension}});
  }
  return out;
}

inline HilbertLayout layout_from_json(const json& j) {
  std::vector<Subsystem> subs;
  for (const auto& s : j) {
    subs.push_back({s.at("label").get<std::string>(), s.at("dimension").get<std::size_t>()});
  }
  return HilbertLayout(std::move(subs));
}

inline json to_json(const sym::SymBasis& b) {
  return {{"copies", b.copies},
          {"local_dimension", b.local_dimension},
          {"basis_index", b.basis_index},
          {"vectors", matrix_to_json(b.vectors)}};
}

inline sym::SymBasis symbasis_from_json(const json& j) {
  sym::SymBasis b;
  b.copies = j.at("copies").get<std::size_t>();
  b.local_dimension = j.at("local_dimension").get<std::size_t>();
  b.basis_index = j.at("basis_index").get<std::vector<sym::Multiset>>();
  b.vectors = matrix_from_json(j.at("vectors"));
  if (b.basis_index.size() != static_cast<std::size_t>(b.vectors.cols())) {
    throw DimensionError("SymBasis JSON: basis_index and vectors disagree");
  }
  return b;
}

inline json to_json(const sym::SymProjector& p) {
  return {{"copies", p.copies},
          {"local_dimension", p.local_dimension},
          {"matrix", matrix_to_json(p.matrix)}};
}

inline sym::SymProjector symprojector_from_json(const json& j) {
  return {j.at("copies").get<std::size_t>(), j.at("local_dimension").get<std::size_t>(),
          matrix_from_json(j.at("matrix"))};
}

inline json to_json(const circuit::Gate& g) {
  json out = {{"name", std::string(circuit::gate_name(g.kind))},
              {"params", g.params},
              {"targets", g.targets}};
  if (g.custom) out["matrix"] = matrix_to_json(*g.custom);
  return out;
}

inline circuit::Gate gate_from_json(const json& j) {
  circuit::Gate g;
  g.kind = circuit::gate_kind_from_name(j.at("name").get<std::string>());
  g.params = j.at("params").get<std::vector<double>>();
  g.targets = j.at("targets").get<std::vector<std::size_t>>();
  if (j.contains("matrix")) g.custom = matrix_from_json(j.at("matrix"));
  return g;
}

inline json to_json(const circuit::Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) gates.push_back(to_json(g));
  return {{"wires", layout_to_json(c.wires)},
          {"data_wires", c.data_wires},
          {"measured_wires", c.measured_wires},
          {"accept_outcome", "all_zeros"},
          {"gates", std::move(gates)}};
}

inline circuit::Circuit circuit_from_json(const json& j) {
  circuit::Circuit c;
  c.wires = layout_from_json(j.at("wires"));
  c.data_wires = j.at("data_wires").get<std::vector<std::size_t>>();
  c.measured_wires = j.at("measured_wires").get<std::vector<std::size_t>>();
  if (j.value("accept_outcome", std::string("all_zeros")) != "all_zeros") {
    throw PreconditionError("circuit JSON: only the all_zeros accept outcome is supported");
  }
  for (const auto& g : j.at("gates")) c.gates.push_back(gate_from_json(g));
  c.validate();
  return c;
}

}  // namespace symstab::io
