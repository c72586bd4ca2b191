#include "sheetlimit/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sheetlimit::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != header.size()) throw Error(ErrorKind::LayoutMismatch, "row width differs from header");
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_double(r[i]);
    out += "\n";
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_csv(const fs::path& path, const CsvTable& t) { write_text(path, t.str()); }

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

CsvTable read_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Io, "empty CSV " + path.string());
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    for (std::string cell; std::getline(rs, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorKind::Io, "bad number '" + cell + "' in " + path.string());
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable curve_table(const Curve& c) {
  CsvTable t{{"theta", "x", "y"}, {}};
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    t.add_row({c.h() * j, c.nodes()(j).real(), c.nodes()(j).imag()});
  }
  return t;
}

json curve_json(const Curve& c) {
  json j;
  j["M"] = c.size();
  json nodes = json::array(), coeffs = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    nodes.push_back({c.nodes()(i).real(), c.nodes()(i).imag()});
    coeffs.push_back({c.coefficients()(i).real(), c.coefficients()(i).imag()});
  }
  j["nodes"] = nodes;
  j["spectral"] = coeffs;
  return j;
}

Curve curve_from_json(const json& j) {
  try {
    const auto& nodes = j.at("nodes");
    CVec z(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) z(i) = cplx(nodes[i].at(0).get<double>(), nodes[i].at(1).get<double>());
    return build_curve(z);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed curve JSON: ") + e.what());
  }
}

CsvTable operator_table(const Mat& A) {
  CsvTable t;
  for (Eigen::Index j = 0; j < A.cols(); ++j) t.header.push_back("c" + std::to_string(j));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    std::vector<double> row(A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) row[j] = A(i, j);
    t.add_row(std::move(row));
  }
  return t;
}

json eigenvalues_json(const Vec& ev) {
  json j;
  j["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
  return j;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t{{"t", "area", "circulation", "energy", "jump_residual"}, {}};
  for (const auto& d : traj.diagnostics) t.add_row({d.time, d.area, d.circulation, d.energy, d.jump_residual});
  return t;
}

CsvTable blob_trajectory_table(const BlobTrajectory& traj) {
  CsvTable t{{"t", "area", "energy", "rt_indicator"}, {}};
  for (const auto& d : traj.diagnostics) t.add_row({d.time, d.area, d.energy, d.rt_indicator});
  return t;
}

CsvTable energy_table(const EnergyRun& run) {
  CsvTable t{{"t", "E1", "E2", "E_ex", "E0", "E_total"}, {}};
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const auto& r = run.reports[i];
    t.add_row({run.times[i], r.E1, r.E2, r.E_ex, r.E0, r.E_total});
  }
  return t;
}

CsvTable kh_table(int kmax, double rho_plus, double rho_minus, double V, double epsilon) {
  if (kmax < 1) throw Error(ErrorKind::InvalidArgument, "kmax must be >= 1");
  CsvTable t{{"k_wave", "a_sym", "r_sym", "sigma"}, {}};
  for (int k = 1; k <= kmax; ++k) {
    KhSymbol s = kh_symbol(k, rho_plus, rho_minus, V, epsilon);
    t.add_row({static_cast<double>(k), s.a_sym, s.r_sym, s.sigma});
  }
  return t;
}

CsvTable curvature_table(const LimitTable& lt) {
  CsvTable t{{"rho_minus", "R_m", "R_star", "residual_ratio"}, {}};
  for (const auto& r : lt.rows) t.add_row({r.rho_minus, r.R_m, r.R_star, r.residual_ratio});
  return t;
}

CsvTable convergence_table(const ConvergenceReport& r) {
  CsvTable t;
  t.header.push_back("rho_minus");
  for (const auto& c : error_columns()) t.header.push_back(c);
  for (const auto& row : r.rows) {
    std::vector<double> v{row.rho_minus};
    for (double x : error_values(row.sup)) v.push_back(x);
    t.add_row(std::move(v));
  }
  return t;
}

json convergence_json(const ConvergenceReport& r) {
  json j;
  j["rho_sequence"] = r.rho_sequence;
  j["T"] = r.T;
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  j["k"] = r.k;
  j["l"] = r.l;
  j["l_prime"] = r.l_prime;
  json cols = json::object();
  const auto& names = error_columns();
  const auto noise = error_values(r.noise_floor);
  for (std::size_t c = 0; c < names.size(); ++c) {
    cols[names[c]] = {{"slope", r.slopes[c]}, {"monotone", static_cast<bool>(r.monotone[c])},
                      {"noise_floor", noise[c]}};
  }
  j["columns"] = cols;
  return j;
}

json energy_audit_json(const EnergyAudit& a) {
  json j;
  j["rho_minus"] = a.rho_minus;
  j["sup_energy"] = a.sup_energy;
  j["max_over_min"] = a.max_over_min;
  j["max_over_median"] = a.max_over_median;
  j["saturating"] = a.saturating;
  j["monotone_nonincreasing"] = a.monotone_nonincreasing;
  j["curvature_ratio_spread"] = a.curvature_ratio_spread;
  j["velocity_ratio_spread"] = a.velocity_ratio_spread;
  return j;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error(ErrorKind::Io, "SHA-256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return ss.str();
}

namespace {

std::vector<std::string> listed_files(const fs::path& dir) {
  std::vector<std::string> files;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    std::string rel = fs::relative(it->path(), dir).generic_string();
    if (rel != "MANIFEST") files.push_back(rel);
  }
  if (ec) throw Error(ErrorKind::Io, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

void write_manifest(const fs::path& dir) {
  std::string out;
  for (const auto& f : listed_files(dir)) out += sha256_hex(read_text(dir / f)) + "  " + f + "\n";
  write_text(dir / "MANIFEST", out);
}

bool verify_manifest(const fs::path& dir) {
  std::istringstream in(read_text(dir / "MANIFEST"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.size() < 67) return false;
    const std::string hash = line.substr(0, 64), name = line.substr(66);
    if (!fs::exists(dir / name) || sha256_hex(read_text(dir / name)) != hash) return false;
    ++n;
  }
  return n == listed_files(dir).size();
}

}  // namespace sheetlimit::io
