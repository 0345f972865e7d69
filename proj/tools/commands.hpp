#pragma once

// Subcommand implementations for the dqspectra CLI. Each command reads its
// input matrix, writes a plain-text report and returns the process exit code:
//   0 ok, 1 internal or check failure, 2 structural rejection, 3 not perfect.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dqspectra/dqspectra.hpp"

namespace dqspectra::cli {

struct RunConfig {
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string in;       // empty: read stdin
  std::string out;
  std::string factor;   // verify: the U file to check
  std::string kind = "hermitian";
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<std::size_t> k;
  std::vector<double> hs{1e-4, 1e-5};
};

enum ExitCode : int { kOk = 0, kFailure = 1, kRejected = 2, kNotPerfect = 3 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPerfect:
      return kNotPerfect;
    case ErrorKind::NoConvergence:
    case ErrorKind::KernelFailure:
    case ErrorKind::InternalAssertion:
    case ErrorKind::CompletionFailure:
      return kFailure;
    default:
      return kRejected;
  }
}

/// Report formatting: 12 significant digits, negative zero printed as 0.
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

namespace detail {

inline DQMatrix read_matrix(const std::string& path, std::istream& fallback) {
  if (path.empty() || path == "-") return parse_dqmat(fallback);
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return parse_dqmat(f);
}

inline void write_matrix(const std::string& path, const DQMatrix& a) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  write_dqmat(f, a);
}

inline double scale_of(const DQMatrix& a) {
  const DualNorm n = dual_fro_norm(a);
  return 1.0 + n.st + n.inf;
}

inline void print_values(std::ostream& out, const std::vector<DualNumber>& v) {
  for (const DualNumber& d : v) out << num(d.st()) << ' ' << num(d.inf()) << '\n';
}

inline void print_report(std::ostream& out, const EigReport& r) {
  out << "residual_st=" << num(r.residual_st) << " residual_inf=" << num(r.residual_inf)
      << " unitarity_st=" << num(r.unitarity_st) << " unitarity_inf=" << num(r.unitarity_inf) << '\n';
}

inline bool report_ok(const EigReport& r, std::size_t n, double scale, double tol) {
  const double dim = static_cast<double>(std::max<std::size_t>(n, 1));
  const double res = tol * dim * scale;
  const double uni = tol * dim;
  return r.residual_st <= res && r.residual_inf <= res && r.unitarity_st <= uni && r.unitarity_inf <= uni;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix. The residual line is computed from the
/// factor U alone, so `verify` on the written U reproduces it exactly.
inline int cmd_eig(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const DQMatrix a = detail::read_matrix(cfg.in, in);
  const EigDecomposition eig = eig_hermitian(a, cfg.tol);
  const std::size_t n = a.rows();
  if (!cfg.out.empty()) detail::write_matrix(cfg.out, eig.U);

  out << "eigenvalues n=" << n << '\n';
  detail::print_values(out, eig.eigenvalues);
  const double zero = cfg.tol.zero_tol * std::max(1.0, eig.st_norm);
  out << "definiteness=" << to_string(classify_definiteness(eig, zero)) << '\n';

  const std::vector<DualNumber> implied = implied_eigenvalues(a, eig.U);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dev = std::max({dev, std::abs(implied[i].st() - eig.eigenvalues[i].st()),
                    std::abs(implied[i].inf() - eig.eigenvalues[i].inf())});
  }
  const EigReport rep = eig_report(a, eig.U, implied);
  detail::print_report(out, rep);
  out << "sigma_deviation=" << num(dev) << '\n';
  const double scale = detail::scale_of(a);
  const bool ok = detail::report_ok(rep, n, scale, cfg.tol.residual_tol) &&
                  dev <= cfg.tol.residual_tol * static_cast<double>(std::max<std::size_t>(n, 1)) * scale;
  out << "status=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kFailure;
}

/// Checks a factor U (from `eig --out`) against the Hermitian input.
inline int cmd_verify(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const DQMatrix a = detail::read_matrix(cfg.in, in);
  if (cfg.factor.empty()) throw Error(ErrorKind::BadDimensions, "verify needs --factor FILE");
  std::ifstream ff(cfg.factor);
  if (!ff) throw Error(ErrorKind::ParseError, "cannot open '" + cfg.factor + "'");
  const DQMatrix u = parse_dqmat(ff);
  if (!is_hermitian(a, cfg.tol.struct_tol)) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian");
  if (u.rows() != a.rows() || u.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "factor shape does not match the matrix");
  }
  const std::vector<DualNumber> implied = implied_eigenvalues(a, u);
  out << "eigenvalues n=" << a.rows() << '\n';
  detail::print_values(out, implied);
  const EigReport rep = eig_report(a, u, implied);
  detail::print_report(out, rep);
  const bool ok = detail::report_ok(rep, a.rows(), detail::scale_of(a), cfg.tol.residual_tol);
  out << "status=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kFailure;
}

inline int cmd_svd(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const DQMatrix b = detail::read_matrix(cfg.in, in);
  const SvdDecomposition s = svd(b, cfg.tol);
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  out << "singular_values m=" << m << " n=" << n << '\n';
  detail::print_values(out, s.sigma);
  out << "rank=" << s.rank_t << " appreciable_rank=" << s.app_rank_r << '\n';

  const DualNorm res = dual_fro_norm(conj_transpose(s.V) * b * s.U - singular_matrix(m, n, s.sigma));
  const DualNorm uv = dual_fro_norm(conj_transpose(s.V) * s.V - DQMatrix::identity(m));
  const DualNorm uu = dual_fro_norm(conj_transpose(s.U) * s.U - DQMatrix::identity(n));
  out << "residual_st=" << num(res.st) << " residual_inf=" << num(res.inf) << " unitarity_v_st=" << num(uv.st)
      << " unitarity_v_inf=" << num(uv.inf) << " unitarity_u_st=" << num(uu.st)
      << " unitarity_u_inf=" << num(uu.inf) << '\n';
  const double dim = static_cast<double>(std::max<std::size_t>({m, n, 1}));
  const double rtol = cfg.tol.residual_tol * dim * detail::scale_of(b);
  const double utol = cfg.tol.residual_tol * dim;
  bool ok = res.st <= rtol && res.inf <= rtol && uv.st <= utol && uv.inf <= utol && uu.st <= utol &&
            uu.inf <= utol;

  if (cfg.k) {
    const DQMatrix approx = low_rank_approx(b, *cfg.k, cfg.tol);
    if (!cfg.out.empty()) detail::write_matrix(cfg.out, approx);
    const DualNorm err = dual_fro_norm(approx - b);
    out << "approx_k=" << *cfg.k << " approx_err_st=" << num(err.st) << " approx_err_inf=" << num(err.inf)
        << '\n';
  }
  out << "status=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kFailure;
}

inline int cmd_rank(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const DQMatrix b = detail::read_matrix(cfg.in, in);
  const Ranks r = ranks(b, cfg.tol);
  const bool ok = r.app_rank_r == r.rank_st;
  out << "rank=" << r.rank_t << " appreciable_rank=" << r.app_rank_r << '\n';
  out << "rank_st=" << r.rank_st << " cross_check=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kFailure;
}

/// Square root of a perfect Hermitian matrix. Without --out the root is
/// written to stdout and the report follows as '#' comment lines.
inline int cmd_sqrt(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const DQMatrix a = detail::read_matrix(cfg.in, in);
  const DQMatrix l = psd_sqrt(a, cfg.tol);
  const DualNorm res = dual_fro_norm(l * l - a);
  const DualNorm an = dual_fro_norm(a);
  const double bound =
      cfg.tol.residual_tol * static_cast<double>(std::max<std::size_t>(a.rows(), 1)) * std::max(1.0, an.st + an.inf);
  const bool ok = res.st <= bound && res.inf <= bound;
  std::string prefix;
  if (cfg.out.empty()) {
    write_dqmat(out, l);
    prefix = "# ";
  } else {
    detail::write_matrix(cfg.out, l);
  }
  out << prefix << "residual_st=" << num(res.st) << " residual_inf=" << num(res.inf) << '\n';
  out << prefix << "status=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kFailure;
}

inline DQMatrix generate(const RunConfig& cfg) {
  if (cfg.rows == 0 || cfg.cols == 0) throw Error(ErrorKind::BadDimensions, "--rows and --cols must be >= 1");
  Rng rng(cfg.seed);
  if (cfg.kind == "hermitian") {
    if (cfg.rows != cfg.cols) throw Error(ErrorKind::BadDimensions, "hermitian requires rows == cols");
    return random_hermitian(cfg.rows, rng);
  }
  if (cfg.kind == "general") return random_general(cfg.rows, cfg.cols, rng);
  if (cfg.kind == "psd") return random_psd(cfg.rows, cfg.cols, rng);
  if (cfg.kind == "pose") return random_pose(cfg.rows, cfg.cols, rng);
  throw Error(ErrorKind::BadDimensions, "unknown kind '" + cfg.kind + "'");
}

/// Writes a random instance. psd emits B* B for a random rows x cols B,
/// so the output is cols x cols.
inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const DQMatrix a = generate(cfg);
  if (cfg.out.empty()) {
    write_dqmat(out, a);
  } else {
    detail::write_matrix(cfg.out, a);
  }
  return kOk;
}

inline int cmd_oracle(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const DQMatrix a = detail::read_matrix(cfg.in, in);
  const OracleResult r = fd_oracle(a, cfg.hs, cfg.tol);
  for (std::size_t i = 0; i < r.hs.size(); ++i) {
    out << "h=" << num(r.hs[i]) << " deviation=" << num(r.deviations[i]) << '\n';
  }
  out << "ratio=" << num(r.ratio) << '\n';
  out << "status=" << (r.pass ? "PASS" : "FAIL") << '\n';
  return r.pass ? kOk : kFailure;
}

/// Runs one subcommand, mapping library errors to exit codes.
inline int run(const std::string& command, const RunConfig& cfg, std::istream& in, std::ostream& out,
               std::ostream& err) {
  try {
    if (command == "eig") return cmd_eig(cfg, in, out);
    if (command == "svd") return cmd_svd(cfg, in, out);
    if (command == "rank") return cmd_rank(cfg, in, out);
    if (command == "sqrt") return cmd_sqrt(cfg, in, out);
    if (command == "gen") return cmd_gen(cfg, out);
    if (command == "oracle") return cmd_oracle(cfg, in, out);
    if (command == "verify") return cmd_verify(cfg, in, out);
    err << "error: unknown command '" << command << "'\n";
    return kRejected;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotPerfect) {
      err << "error: matrix is not perfect (no PSD Hermitian square root): " << e.what() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace dqspectra::cli
