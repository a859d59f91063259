#include "stralg/io.hpp"

#include <fstream>

namespace stralg {

namespace {

json matrix_to_json(const Mat& m, bool imag) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const json& re, const json& im) {
  int rows = static_cast<int>(re.size());
  int cols = rows > 0 ? static_cast<int>(re[0].size()) : 0;
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
  return m;
}

}  // namespace

json to_json(const TrigForm& a) {
  json j;
  j["frame"] = {{"n", a.frame().n}};
  j["degree"] = a.degree();
  j["m"] = a.msize();
  if (a.approximate()) j["approximate"] = true;
  json entries = json::array();
  for (auto& [b, mm] : a.components()) {
    for (auto& [k, v] : mm) {
      json e;
      json blade = json::array();
      for (int idx : b) blade.push_back(idx + 1);
      e["blade"] = blade;
      e["mode"] = k;
      e["re"] = matrix_to_json(v, false);
      e["im"] = matrix_to_json(v, true);
      entries.push_back(e);
    }
  }
  j["entries"] = entries;
  return j;
}

TrigForm trigform_from_json(const json& j, std::size_t mode_cap) {
  TorusFrame f{j.at("frame").at("n").get<int>(), mode_cap};
  int degree = j.value("degree", -1);
  int m = j.value("m", 1);
  if (degree < 0 && !j.at("entries").empty())
    degree = static_cast<int>(j.at("entries")[0].at("blade").size());
  if (degree < 0) degree = 0;
  TrigForm r(f, degree, m);
  r.set_approximate(j.value("approximate", false));
  for (auto& e : j.at("entries")) {
    Blade b;
    for (auto& idx : e.at("blade")) b.push_back(idx.get<int>() - 1);
    Mode k = e.at("mode").get<Mode>();
    r.add_term(b, k, matrix_from_json(e.at("re"), e.at("im")));
  }
  return r;
}

json to_json(const GridForm& a) {
  json j;
  j["frame"] = {{"n", a.frame().n}};
  j["grid_N"] = a.resolution();
  j["degree"] = a.degree();
  j["m"] = a.msize();
  if (a.approximate()) j["approximate"] = true;
  json entries = json::array();
  for (auto& [b, gd] : a.components()) {
    json e;
    json blade = json::array();
    for (int idx : b) blade.push_back(idx + 1);
    e["blade"] = blade;
    json re = json::array(), im = json::array();
    for (auto& x : gd.v) {
      re.push_back(x.real());
      im.push_back(x.imag());
    }
    e["values_re"] = re;
    e["values_im"] = im;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

GridForm gridform_from_json(const json& j, std::size_t mode_cap) {
  TorusFrame f{j.at("frame").at("n").get<int>(), mode_cap};
  int degree = j.value("degree", 0);
  int m = j.value("m", 1);
  GridForm r(f, j.at("grid_N").get<int>(), degree, m);
  r.set_approximate(j.value("approximate", false));
  for (auto& e : j.at("entries")) {
    Blade b;
    for (auto& idx : e.at("blade")) b.push_back(idx.get<int>() - 1);
    auto& gd = r.component(b);
    auto& re = e.at("values_re");
    auto& im = e.at("values_im");
    for (std::size_t i = 0; i < gd.v.size(); ++i)
      gd.v[i] = cplx(re[i].get<double>(), im[i].get<double>());
  }
  return r;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace stralg
