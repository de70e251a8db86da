#include "selfcheck.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "bosent/blocks.hpp"
#include "bosent/entanglement.hpp"
#include "bosent/errors.hpp"
#include "bosent/geometry.hpp"
#include "bosent/modes.hpp"
#include "bosent/robustness.hpp"

namespace bosent::cli {

namespace {

std::string str(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

CheckItem near(std::string name, double expected, double measured, double tol) {
  const bool ok = std::isinf(expected) ? measured == expected : std::abs(measured - expected) <= tol;
  return {std::move(name), ok, str(expected), str(measured)};
}

CheckItem flag(std::string name, bool ok, std::string expected, std::string measured) {
  return {std::move(name), ok, std::move(expected), std::move(measured)};
}

DensityMatrix phase(int n) {
  const std::vector<double> zeros(static_cast<std::size_t>(n + 1), 0.0);
  return to_density(phase_state(make_basis(n, 2, 1), zeros));
}

}  // namespace

std::vector<CheckItem> run_selfcheck() {
  std::vector<CheckItem> items;
  auto guarded = [&](const std::string& name, const std::function<CheckItem()>& f) {
    try {
      items.push_back(f());
    } catch (const std::exception& e) {
      items.push_back({name, false, "no error", e.what()});
    }
  };

  guarded("dimension D(N=2, M=4)", [] {
    const auto d = static_cast<double>(make_basis(2, 4, 2)->dim());
    return near("dimension D(N=2, M=4)", 10, d, 0);
  });
  guarded("phase state N=3 negativity", [] { return near("phase state N=3 negativity", 1.5, negativity(phase(3)), 1e-9); });
  guarded("maximally entangled (2,2,1) negativity", [] {
    return near("maximally entangled (2,2,1) negativity", 1.0, negativity(to_density(maximally_entangled(make_basis(2, 2, 1)))),
                1e-9);
  });
  for (int n : {2, 3, 5}) {
    const std::string name = "phase state N=" + std::to_string(n) + " generalized bounds";
    guarded(name, [&] {
      const auto b = rg_bounds(phase(n));
      const double worst = std::max(std::abs(b.lambda_d - n), std::abs(b.l1 - n));
      return flag(name, worst <= 1e-9, "lambda*D = l1 = " + std::to_string(n),
                  "lambda*D = " + str(b.lambda_d) + ", l1 = " + str(b.l1));
    });
  }
  guarded("negative-coherence state", [] {
    const auto rho = negative_coherence_state(make_basis(4, 2, 1));
    const auto b = rg_bounds(rho);
    const bool ok = std::abs(b.l1_nd - 1.0) <= 1e-9 && std::abs(b.lambda_d - 0.25) <= 1e-9;
    return flag("negative-coherence state", ok, "l1_nd = 1, lambda*D = 1/N = 0.25",
                "l1_nd = " + str(b.l1_nd) + ", lambda*D = " + str(b.lambda_d));
  });
  guarded("phase state standard robustness", [] {
    return near("phase state standard robustness", INFINITY, robustness_standard(phase(3)).value, 0);
  });
  guarded("Bell block standard robustness equals negativity", [] {
    // (|1,0;1,0> + |0,1;0,1>)/sqrt2 inside the 2x2 sector k=1 of (N=2, M=4, m=2).
    const auto b = make_basis(2, 4, 2);
    Vector amps = Vector::Zero(10);
    amps(static_cast<Eigen::Index>(b->flat_index(1, 1, 1))) = 1.0 / std::sqrt(2.0);
    amps(static_cast<Eigen::Index>(b->flat_index(1, 2, 2))) = 1.0 / std::sqrt(2.0);
    const auto rho = to_density(PureState::make(b, amps));
    // Expected value is the negativity 0.5.
    return near("Bell block standard robustness equals negativity", negativity(rho), robustness_standard(rho).value, 1e-6);
  });
  guarded("Werner p=1e-6 entangled", [] {
    const auto rho = werner_like(1e-6, maximally_entangled(make_basis(3, 2, 1)));
    const auto v = is_separable(rho);
    return flag("Werner p=1e-6 entangled", v.status == Separability::entangled, "entangled",
                std::string(to_string(v.status)) + ", negativity " + str(negativity(rho)));
  });
  guarded("border eps=1e-8 entangled", [] {
    const auto b = make_basis(2, 2, 1);
    const std::vector<double> eps{1e-8};
    const auto pts = border_probe(totally_mixed(b), to_density(maximally_entangled(b)), eps);
    return flag("border eps=1e-8 entangled", pts.front().verdict.status == Separability::entangled, "entangled",
                std::string(to_string(pts.front().verdict.status)));
  });
  guarded("beamsplitter image of |1,1>", [] {
    const auto b = make_basis(2, 2, 1);
    Vector amps = Vector::Zero(3);
    amps(1) = 1.0;
    const auto out = transform_state(PureState::make(b, amps), balanced_beamsplitter());
    const double a = 1.0 / std::sqrt(2.0);
    const double dev = std::max({std::abs(std::abs(out.amplitudes()(0)) - a), std::abs(out.amplitudes()(1)),
                                 std::abs(std::abs(out.amplitudes()(2)) - a)});
    return flag("beamsplitter image of |1,1>", dev <= 1e-12, "(|2,0> - |0,2>)/sqrt2 up to sign",
                "max deviation " + str(dev));
  });
  guarded("maximally entangled (2,2,1) entropy", [] {
    const auto r = reduced_state(to_density(maximally_entangled(make_basis(2, 2, 1))), Side::first);
    return near("maximally entangled (2,2,1) entropy", std::log(3.0), r.entropy, 1e-9);
  });
  guarded("totally mixed sweep", [] {
    const auto r = bipartition_sweep(totally_mixed(make_basis(3, 2, 1)), 20, 7);
    return near("totally mixed sweep", 1.0, r.fraction_separable, 0);
  });
  guarded("totally mixed invariance", [] {
    const auto b = make_basis(2, 4, 2);
    const auto rho = totally_mixed(b);
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto out = transform_state(rho, random_mode_unitary(4, rng));
      worst = std::max(worst, (out.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    }
    return near("totally mixed invariance", 0.0, worst, 1e-12);
  });
  return items;
}

}  // namespace bosent::cli
