#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pasplit {

// GEM(alpha, theta). For alpha < 0, theta = m |alpha| and only m sticks are
// positive; `m` is stored in that case.
struct Gem {
  double alpha = 0.0;
  double theta = 1.0;
  std::optional<int> m;

  static Gem make(double alpha, double theta);
};

// Symmetric Dirichlet(a, ..., a) on m components.
struct DirichletSym {
  int m = 2;
  double a = 1.0;

  static DirichletSym make(int m, std::optional<double> a = std::nullopt);
};

// A fixed split vector shared by every node.
struct Explicit {
  std::vector<double> probs;

  static Explicit make(std::vector<double> probs);
};

using SplitSpec = std::variant<Gem, DirichletSym, Explicit>;

std::string describe(const SplitSpec& spec);

// Linear preferential-attachment weights w_k = chi * k + rho.
class GrowthParams {
 public:
  // Throws std::invalid_argument naming the violated constraint.
  static GrowthParams make(double chi, double rho);
  // Inverse of alpha = chi/(chi+rho), theta = rho/(chi+rho), normalized to
  // chi + rho = 1; requires alpha + theta = 1.
  static GrowthParams from_alpha_theta(double alpha, double theta);

  double chi() const { return chi_; }
  double rho() const { return rho_; }
  double alpha() const { return chi_ / (chi_ + rho_); }
  double theta() const { return rho_ / (chi_ + rho_); }
  double gamma() const { return theta(); }
  // Maximum outdegree when chi < 0.
  std::optional<int> m() const { return m_; }

  Gem gem() const;

 private:
  GrowthParams(double chi, double rho, std::optional<int> m) : chi_(chi), rho_(rho), m_(m) {}

  double chi_;
  double rho_;
  std::optional<int> m_;
};

}  // namespace pasplit
