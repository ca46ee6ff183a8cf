#pragma once

/// Shared scalar/matrix aliases, boundary-condition bookkeeping and the
/// library error type.  Everything downstream works on [0,1] with the
/// exponential basis e^{i theta(p) x}; the helpers here centralize the
/// periodic vs antiperiodic frequency maps so no other file hardcodes them.

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rieszspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Bc { Periodic, Antiperiodic };

inline const char* bc_name(Bc bc)
{
  return bc == Bc::Periodic ? "periodic" : "antiperiodic";
}

enum class Errc
{
  OddOrder,
  DimensionMismatch,
  TailOverlap,
  DegenerateSpectrum,
  DegeneratePair,
  EmptyDiagonal,
  UnknownScenario,
  TruncationTooSmall,
  SizeCapExceeded,
  NoConvergence,
  InvalidConfig,
  IoError
};

inline const char* errc_name(Errc c)
{
  switch (c)
  {
    case Errc::OddOrder: return "OddOrder";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TailOverlap: return "TailOverlap";
    case Errc::DegenerateSpectrum: return "DegenerateSpectrum";
    case Errc::DegeneratePair: return "DegeneratePair";
    case Errc::EmptyDiagonal: return "EmptyDiagonal";
    case Errc::UnknownScenario: return "UnknownScenario";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code)
  {
  }
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg)
{
  throw Error(code, msg);
}

/// Real frequency of grid index p: 2*pi*p (periodic) or (2p+1)*pi
/// (antiperiodic).  Grid indices run over all of Z; the antiperiodic grid
/// never contains frequency 0.
inline double theta(Bc bc, int p)
{
  const double pi = std::numbers::pi;
  return bc == Bc::Periodic ? 2.0 * pi * p : (2.0 * p + 1.0) * pi;
}

/// i^e for integer e >= 0, computed exactly.
inline Complex unit_power(int e)
{
  switch (((e % 4) + 4) % 4)
  {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// t^e by repeated multiplication.  For even e the result is bitwise
/// identical for t and -t, which keeps mu(k) == mu(-k) exact.
inline double real_ipow(double t, int e)
{
  double acc = 1.0;
  for (int i = 0; i < e; ++i)
    acc *= t;
  return acc;
}

/// (i * theta(p))^e with the imaginary unit factored out exactly.
inline Complex omega_pow(Bc bc, int p, int e)
{
  return unit_power(e) * real_ipow(theta(bc, p), e);
}

/// Grid index whose frequency is the negative of index k's.
inline int pair_partner(Bc bc, int k)
{
  return bc == Bc::Periodic ? -k : -k - 1;
}

/// Coefficient frequency transferred between the two members of pair k:
/// theta(k) - theta(partner) in units of 2*pi.
inline int transfer_frequency(Bc bc, int k)
{
  return bc == Bc::Periodic ? 2 * k : 2 * k + 1;
}

/// Nonnegative pair label of a grid index (k and its partner share it).
inline int pair_index(Bc bc, int p)
{
  if (bc == Bc::Periodic)
    return p < 0 ? -p : p;
  return p < 0 ? -p - 1 : p;
}

}  // namespace rieszspec
