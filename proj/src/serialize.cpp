#include "gds/serialize.hpp"

#include "gds/error.hpp"
#include "gds/experiments.hpp"

namespace gds {

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = static_cast<Index>(j.size());
    const auto cols = rows ? static_cast<Index>(j.at(0).size()) : 0;
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      if (static_cast<Index>(j.at(i).size()) != cols) {
        throw Error(ErrorCode::ParseError, "ragged matrix rows");
      }
      for (Index c = 0; c < cols; ++c) {
        const auto& cell = j.at(i).at(c);
        m(i, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
  }
}

namespace {

std::vector<Index> shifted(const std::vector<Index>& v, Index by) {
  std::vector<Index> out(v);
  for (auto& x : out) x += by;
  return out;
}

}  // namespace

nlohmann::json partition_to_json(const Partition& p, IndexBase base) {
  const auto b = static_cast<Index>(base);
  return {{"n", p.size()},
          {"index_base", b},
          {"kept", shifted(p.kept_sorted(), b)},
          {"purged", shifted(p.purged(), b)}};
}

Partition partition_from_json(const nlohmann::json& j, IndexBase base) {
  try {
    const auto b = static_cast<Index>(base);
    const auto n = j.at("n").get<Index>();
    const auto kept = shifted(j.at("kept").get<std::vector<Index>>(), -b);
    if (j.contains("purged")) {
      return Partition(n, kept, shifted(j.at("purged").get<std::vector<Index>>(), -b));
    }
    return Partition::from_kept(n, kept);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("partition JSON: ") + e.what());
  }
}

nlohmann::json operator_to_json(const DownsampleOperator& op, IndexBase base, bool include_matrices) {
  nlohmann::json j = partition_to_json(op.partition(), base);
  j["sdqm"] = json_number(op.sdqm());
  j["reconstructible"] = is_perfectly_reconstructible(op);
  if (include_matrices && op.reconstruction_map()) {
    j["kept_gft"] = matrix_to_json(*op.kept_gft());
    j["reconstruction_map"] = matrix_to_json(*op.reconstruction_map());
  }
  return j;
}

nlohmann::json cut_report_to_json(const CutReport& r) {
  return {{"cut_weight", r.cut_weight}, {"total_weight", r.total_weight}, {"cut_index", r.cut_index}};
}

}  // namespace gds
