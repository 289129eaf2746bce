#include "pasplit/params.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pasplit {

namespace {

constexpr double kIntegerTolerance = 1e-9;

std::optional<int> integer_ratio(double num, double den) {
  const double r = num / den;
  const double rounded = std::round(r);
  if (std::abs(r - rounded) > kIntegerTolerance || rounded < 1.0) return std::nullopt;
  return static_cast<int>(rounded);
}

}  // namespace

Gem Gem::make(double alpha, double theta) {
  if (!std::isfinite(alpha) || !std::isfinite(theta)) throw std::invalid_argument("GEM parameters must be finite");
  if (!(alpha < 1.0)) throw std::invalid_argument("GEM requires alpha < 1");
  if (theta + alpha < 0.0) throw std::invalid_argument("GEM requires theta + alpha >= 0");
  Gem g{alpha, theta, std::nullopt};
  if (alpha < 0.0) {
    g.m = integer_ratio(theta, -alpha);
    if (!g.m) throw std::invalid_argument("GEM with alpha < 0 requires theta/|alpha| to be a positive integer");
  }
  return g;
}

DirichletSym DirichletSym::make(int m, std::optional<double> a) {
  if (m < 2) throw std::invalid_argument("Dirichlet split requires m >= 2");
  const double shape = a.value_or(1.0 / (m - 1));
  if (!(shape > 0.0) || !std::isfinite(shape)) throw std::invalid_argument("Dirichlet split requires a > 0");
  return DirichletSym{m, shape};
}

Explicit Explicit::make(std::vector<double> probs) {
  if (probs.empty()) throw std::invalid_argument("explicit split vector is empty");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("explicit split entries must be finite and >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("explicit split vector must sum to 1");
  return Explicit{std::move(probs)};
}

std::string describe(const SplitSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gem>) {
          os << "GEM(" << s.alpha << "," << s.theta << ")";
        } else if constexpr (std::is_same_v<T, DirichletSym>) {
          os << "Dirichlet(m=" << s.m << ",a=" << s.a << ")";
        } else {
          os << "Explicit(";
          for (std::size_t i = 0; i < s.probs.size(); ++i) os << (i ? "," : "") << s.probs[i];
          os << ")";
        }
      },
      spec);
  return os.str();
}

GrowthParams GrowthParams::make(double chi, double rho) {
  if (!std::isfinite(chi) || !std::isfinite(rho)) throw std::invalid_argument("chi and rho must be finite");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (!(chi + rho > 0.0)) {
    throw std::invalid_argument("chi + rho must be > 0 (the path case chi = -rho is not simulated)");
  }
  std::optional<int> m;
  if (chi < 0.0) {
    m = integer_ratio(rho, -chi);
    if (!m) throw std::invalid_argument("chi < 0 requires rho/|chi| to be a positive integer");
  }
  return GrowthParams(chi, rho, m);
}

GrowthParams GrowthParams::from_alpha_theta(double alpha, double theta) {
  if (std::abs(alpha + theta - 1.0) > 1e-9) {
    throw std::invalid_argument("alpha + theta must equal 1 to correspond to (chi, rho)");
  }
  return make(alpha, theta);
}

Gem GrowthParams::gem() const {
  Gem g{alpha(), theta(), m_};
  return g;
}

}  // namespace pasplit
