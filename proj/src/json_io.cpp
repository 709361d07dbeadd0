#include "tautcoh/json_io.hpp"

#include <fstream>
#include <iostream>

#include "tautcoh/errors.hpp"

namespace tautcoh {

namespace {

Field field_of(const Json& j) {
  if (!j.contains("field")) return Field::rationals();
  const auto name = j.at("field").get<std::string>();
  if (name == "Q") return Field::rationals();
  if (name == "Fp") {
    if (!j.contains("p")) throw InputError("field Fp needs \"p\"");
    return Field::fp(j.at("p").get<std::uint32_t>());
  }
  return parse_field(name);
}

}  // namespace

Realization realization_from_json(const Json& j) {
  try {
    const Field f = field_of(j);
    const auto& rows = j.at("matrix");
    if (!rows.is_array()) throw InputError("\"matrix\" must be an array of rows");
    std::size_t cols = 0;
    if (j.contains("ground")) cols = j.at("ground").get<std::size_t>();
    if (!rows.empty()) cols = rows.at(0).size();
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != cols) throw InputError("ragged realization matrix");
      for (std::size_t k = 0; k < cols; ++k) {
        const auto& x = rows[i][k];
        if (x.is_number_integer())
          m(i, k) = Scalar(f, x.get<std::int64_t>());
        else if (x.is_string())
          m(i, k) = Scalar::parse(f, x.get<std::string>());
        else
          throw InputError("matrix entries must be integers or rational strings");
      }
    }
    if (cols > 16) throw Refusal("ground sets above 16 elements are not supported");
    return Realization(std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed realization JSON: ") + e.what());
  }
}

Json field_to_json(Field f) {
  Json j;
  if (f.is_rational()) {
    j["field"] = "Q";
  } else {
    j["field"] = "Fp";
    j["p"] = f.prime;
  }
  return j;
}

Json realization_to_json(const Realization& L) {
  Json j = field_to_json(L.field());
  j["ground"] = L.ground_size();
  Json rows = Json::array();
  const Matrix& b = L.basis();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < b.cols(); ++k) row.push_back(b(i, k).to_string());
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

Realization load_realization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return realization_from_json(j);
}

Json report_to_json(const CohomologyReport& r) {
  Json j;
  j["h"] = r.h;
  j["euler"] = r.euler();
  j["weights_scanned"] = r.weights_scanned;
  j["distinct_pieces"] = r.distinct_pieces;
  if (!r.per_weight.empty()) {
    Json pw = Json::array();
    for (const auto& w : r.per_weight) pw.push_back({{"mu", w.mu}, {"h", w.h}});
    j["per_weight"] = std::move(pw);
  }
  return j;
}

void write_json(const Json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace tautcoh
