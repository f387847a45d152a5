#include "qspeed/matrix_json.hpp"

#include <fstream>

namespace qspeed {

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return nlohmann::json{{"dim", m.rows()}, {"re", std::move(re)},
                        {"im", std::move(im)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") ||
      !j.contains("im")) {
    throw ValidationError("matrix json: expected {dim, re, im}");
  }
  const auto n = j.at("dim").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != n ||
      static_cast<Eigen::Index>(im.size()) != n) {
    throw ValidationError("matrix json: row count does not match dim");
  }
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& re_row = re.at(i);
    const auto& im_row = im.at(i);
    if (static_cast<Eigen::Index>(re_row.size()) != n ||
        static_cast<Eigen::Index>(im_row.size()) != n) {
      throw ValidationError("matrix json: column count does not match dim");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      m(i, k) = cplx(re_row.at(k).get<double>(), im_row.at(k).get<double>());
    }
  }
  return m;
}

void save_matrix(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ValidationError("save_matrix: cannot open " + path);
  out << matrix_to_json(m).dump(2) << "\n";
}

CMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("load_matrix: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return matrix_from_json(j);
}

}  // namespace qspeed
