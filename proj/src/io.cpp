#include "ptv/io.hpp"

#include <fstream>
#include <sstream>

#include "ptv/error.hpp"

namespace ptv {

using nlohmann::json;

json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw Error("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json to_json(const Process& p) {
  json grid = json::array();
  for (const auto& row : p.grid()) {
    json jr = json::array();
    for (const auto& c : row) jr.push_back(to_json(c.matrix()));
    grid.push_back(std::move(jr));
  }
  return json{{"dom", p.dom().blocks()}, {"cod", p.cod().blocks()}, {"grid", std::move(grid)}};
}

Process process_from_json(const json& j) {
  SystemType dom(j.at("dom").get<std::vector<int>>());
  SystemType cod(j.at("cod").get<std::vector<int>>());
  const auto& g = j.at("grid");
  if (g.size() != dom.num_blocks()) throw DimensionError("grid has " + std::to_string(g.size()) + " rows, expected " +
                                                         std::to_string(dom.num_blocks()));
  std::vector<std::vector<BlockMap>> grid(dom.num_blocks());
  for (std::size_t i = 0; i < dom.num_blocks(); ++i) {
    if (g[i].size() != cod.num_blocks()) throw DimensionError("grid row has wrong number of cells");
    for (std::size_t k = 0; k < cod.num_blocks(); ++k)
      grid[i].emplace_back(dom.block(i), cod.block(k), matrix_from_json(g[i][k]));
  }
  return Process(dom, cod, std::move(grid));
}

ModelFile model_from_json(const json& j) {
  ModelFile out;
  if (j.contains("systems"))
    for (const auto& [name, blocks] : j.at("systems").items())
      out.systems.define(name, SystemType(blocks.get<std::vector<int>>()));
  if (j.contains("generators"))
    for (const auto& [name, p] : j.at("generators").items()) {
      Process proc = process_from_json(p);
      out.generators.insert_or_assign(name, std::move(proc));
    }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ptv
