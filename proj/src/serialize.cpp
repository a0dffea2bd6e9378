#include "groupquant/serialize.hpp"

#include <filesystem>
#include <fstream>

#include "groupquant/errors.hpp"

namespace gq {

namespace {

Json matrix_to_json(const MatrixXcd& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rrow = Json::array(), irow = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rrow.push_back(m(r, c).real());
      irow.push_back(m(r, c).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return Json{{"re", re}, {"im", im}};
}

MatrixXcd matrix_from_json(const Json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  MatrixXcd m(re.size(), re.empty() ? 0 : re[0].size());
  for (std::size_t r = 0; r < re.size(); ++r)
    for (std::size_t c = 0; c < re[r].size(); ++c)
      m(Eigen::Index(r), Eigen::Index(c)) =
          Complex(re[r][c].get<double>(), im[r][c].get<double>());
  return m;
}

}  // namespace

Json symbol_to_json(const MatrixSymbol& sigma) {
  Json out;
  out["group"] = sigma.model()->name();
  out["band"] = sigma.band();
  out["in_dim"] = sigma.in_dim();
  out["out_dim"] = sigma.out_dim();
  out["kind"] = sigma.is_sampled() ? "sampled" : "invariant";
  if (sigma.is_sampled()) {
    out["x_band"] = sigma.x_band();
    out["x_grid_band"] = sigma.xgrid()->band;
  }
  Json entries = Json::array();
  for (int i = 0; i < sigma.in_dim(); ++i)
    for (int r = 0; r < sigma.out_dim(); ++r)
      for (std::size_t x = 0; x < sigma.x_count(); ++x)
        for (std::size_t j = 0; j < sigma.dual().size(); ++j) {
          Json e = matrix_to_json(sigma.at(i, r, x, int(j)));
          e["i"] = i;
          e["r"] = r;
          if (sigma.is_sampled()) e["x_index"] = x;
          e["irrep_label"] = sigma.dual()[j].label;
          entries.push_back(std::move(e));
        }
  out["entries"] = std::move(entries);
  return out;
}

MatrixSymbol symbol_from_json(const Json& j, const std::shared_ptr<const GroupModel>& model,
                              std::shared_ptr<const QuadratureGrid> grid) {
  if (j.at("group").get<std::string>() != model->name())
    throw ConfigError("symbol file group does not match the configured model");
  const int band = j.at("band").get<int>();
  const int in_dim = j.at("in_dim").get<int>();
  const int out_dim = j.at("out_dim").get<int>();
  const bool sampled = j.at("kind").get<std::string>() == "sampled";
  MatrixSymbol s;
  if (sampled) {
    if (!grid) grid = std::make_shared<QuadratureGrid>(model->quadrature(j.at("x_grid_band").get<int>()));
    s = MatrixSymbol::sampled(model, band, in_dim, out_dim, grid, j.at("x_band").get<int>());
  } else {
    s = MatrixSymbol::invariant(model, band, in_dim, out_dim);
  }
  auto dual = model->enumerate_dual(band);
  for (const auto& e : j.at("entries")) {
    const std::vector<int> label = e.at("irrep_label").get<std::vector<int>>();
    int idx = -1;
    for (std::size_t k = 0; k < dual.size(); ++k)
      if (dual[k].label == label) idx = int(k);
    if (idx < 0) throw ConfigError("symbol file contains an irrep outside the band");
    const std::size_t x = sampled ? e.at("x_index").get<std::size_t>() : 0;
    s.at(e.at("i").get<int>(), e.at("r").get<int>(), x, idx) = matrix_from_json(e);
  }
  return s;
}

Json coefficients_to_json(const FourierCoefficients& c) {
  Json out;
  out["group"] = c.model->name();
  out["band"] = c.band;
  out["fiber_dim"] = c.fiber_dim;
  auto dual = c.model->enumerate_dual(c.band);
  Json entries = Json::array();
  for (int i = 0; i < c.fiber_dim; ++i)
    for (std::size_t j = 0; j < dual.size(); ++j) {
      Json e = matrix_to_json(c.at(i, int(j)));
      e["i"] = i;
      e["irrep_label"] = dual[j].label;
      entries.push_back(std::move(e));
    }
  out["entries"] = std::move(entries);
  return out;
}

Json field_to_json(const VectorField& f) {
  Json out;
  out["group"] = f.model->name();
  out["grid_band"] = f.grid->band;
  out["fiber_dim"] = f.fiber_dim();
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index x = 0; x < f.values.rows(); ++x) {
    Json rrow = Json::array(), irow = Json::array();
    for (Eigen::Index c = 0; c < f.values.cols(); ++c) {
      rrow.push_back(f.values(x, c).real());
      irow.push_back(f.values(x, c).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

Json section_to_json(const SectionField& s) {
  Json out = field_to_json(s.field);
  out["bundle"] = s.bundle.id;
  out["fiber"] = s.bundle.dim;
  out["invariance_defect"] = s.defect;
  return out;
}

void write_text_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
  }
  fs::rename(tmp, target);
}

}  // namespace gq
