#include "ccomp/quantum_io.hpp"

#include <complex>

#include "ccomp/exceptions.hpp"

namespace ccomp::io {

namespace {

template <typename Fn>
auto wrap(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const quantum::QuantumEnsemble& e) {
  json bases = json::array();
  for (const auto& b : e.bases) {
    json rows = json::array();
    for (int r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < b.cols(); ++c) {
        row.push_back(b(r, c).real());
        row.push_back(b(r, c).imag());
      }
      rows.push_back(row);
    }
    bases.push_back(rows);
  }
  return json{{"m", e.m}, {"n", e.n}, {"k_exp", e.k_exp}, {"bases", bases}};
}

quantum::QuantumEnsemble ensemble_from_json(const json& j) {
  return wrap("ensemble", [&] {
    quantum::QuantumEnsemble e;
    e.m = j.at("m").get<int>();
    e.n = j.at("n").get<int>();
    e.k_exp = j.at("k_exp").get<int>();
    for (const auto& bj : j.at("bases")) {
      quantum::Matrix b(e.m, e.m);
      int r = 0;
      for (const auto& rowj : bj) {
        for (int c = 0; c < e.m; ++c)
          b(r, c) = std::complex<double>(rowj.at(2 * c).get<double>(),
                                         rowj.at(2 * c + 1).get<double>());
        ++r;
      }
      e.bases.push_back(std::move(b));
    }
    return e;
  });
}

}  // namespace ccomp::io
