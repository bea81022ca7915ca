#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace hcyclic::cli {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kDimensionMismatch: return kExitParse;
    case ErrorKind::kNotStronglyConnected:
    case ErrorKind::kAperiodicUndefined: return kExitReducible;
    case ErrorKind::kDecomposition: return kExitDecomposition;
    case ErrorKind::kVerification: return kExitVerification;
    case ErrorKind::kInvalidArgument: return kExitUsage;
  }
  return kExitUsage;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(complex_json(m(i, j)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json vector_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

json partition_json(const OrderedPartition& p) {
  json out = json::array();
  for (const auto& c : p.classes()) {
    json cls = json::array();
    for (int v : c) cls.push_back(v + 1);
    out.push_back(std::move(cls));
  }
  return out;
}

json chain_json(const JordanChain& chain) { return json::parse(chain_to_json(chain)); }

std::string format_complex(Complex z, int precision) {
  auto clean = [](double v) { return std::abs(v) < 5e-15 ? 0.0 : v; };
  const double re = clean(z.real());
  const double im = clean(z.imag());
  std::ostringstream s;
  s << std::setprecision(precision);
  if (im == 0.0) {
    s << re;
  } else if (re == 0.0) {
    s << im << "i";
  } else {
    s << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  }
  return s.str();
}

std::string format_partition(const OrderedPartition& p) {
  std::ostringstream s;
  s << "(";
  for (int l = 0; l < p.size(); ++l) {
    if (l) s << ", ";
    s << "{";
    for (std::size_t i = 0; i < p[l].size(); ++i) {
      if (i) s << ",";
      s << p[l][i] + 1;
    }
    s << "}";
  }
  s << ")";
  return s.str();
}

void print_matrix(std::ostream& out, const ComplexMatrix& m, int precision) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      cells.push_back(format_complex(m(i, j), precision));
      width = std::max(width, cells.back().size());
    }
  }
  std::size_t c = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << (j ? "  " : "") << std::setw(static_cast<int>(width)) << cells[c++];
    }
    out << "]\n";
  }
}

void write_json(const std::string& path, const json& report) {
  if (path == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << report.dump(2) << "\n";
}

}  // namespace hcyclic::cli
