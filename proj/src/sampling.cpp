#include "mcdiff/sampling.hpp"

#include <cmath>

namespace mcdiff {

StateU random_state(const MixtureSpec& spec, Rng& rng) {
  std::uniform_real_distribution<double> density(0.2, 2.0);
  std::uniform_real_distribution<double> velocity(-1.0, 1.0);
  const int n = spec.num_species();
  const int d = spec.dimension;
  StateU state;
  state.dimension = d;
  state.rho.resize(static_cast<std::size_t>(n));
  state.momentum.resize(static_cast<std::size_t>(n * d));
  for (int i = 0; i < n; ++i) {
    const double rho = density(rng);
    state.rho[static_cast<std::size_t>(i)] = rho;
    for (int a = 0; a < d; ++a) {
      state.momentum[static_cast<std::size_t>(i * d + a)] = rho * velocity(rng);
    }
  }
  return state;
}

ConservedU random_conserved(const MixtureSpec& spec, Rng& rng) {
  return conserved_mode(random_state(spec, rng));
}

MixtureSpec random_mixture(Rng& rng, int num_species, int dimension, double epsilon) {
  std::uniform_real_distribution<double> coeff(0.5, 2.0);
  std::uniform_real_distribution<double> gamma(1.0, 2.0);
  std::uniform_real_distribution<double> ref(0.5, 1.5);
  std::bernoulli_distribution use_power(0.5);

  std::vector<PressureLaw> laws;
  std::vector<double> refs;
  for (int i = 0; i < num_species; ++i) {
    if (use_power(rng)) {
      laws.push_back(PressureLaw::power_law(coeff(rng), gamma(rng)));
    } else {
      laws.push_back(PressureLaw::isothermal(coeff(rng)));
    }
    refs.push_back(ref(rng));
  }
  Matrix sigma = Matrix::Zero(num_species, num_species);
  for (int i = 0; i < num_species; ++i) {
    for (int j = i + 1; j < num_species; ++j) {
      sigma(i, j) = sigma(j, i) = coeff(rng);
    }
  }
  return MixtureSpec::make(std::move(laws), std::move(refs), std::move(sigma), epsilon,
                           dimension);
}

std::vector<double> random_frequency(int dimension, Rng& rng) {
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::vector<double> xi(static_cast<std::size_t>(dimension));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : xi) {
      x = comp(rng);
      norm += x * x;
    }
  } while (norm < 1e-6);
  return xi;
}

} // namespace mcdiff
