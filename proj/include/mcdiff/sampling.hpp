#pragma once

#include "mcdiff/entropy.hpp"
#include "mcdiff/mixture.hpp"

#include <random>

namespace mcdiff {

using Rng = std::mt19937_64;

/// Random state well inside O_U: rho_i ~ U[0.2, 2], velocity components ~ U[-1, 1].
StateU random_state(const MixtureSpec& spec, Rng& rng);

/// Conserved mode of a random_state.
ConservedU random_conserved(const MixtureSpec& spec, Rng& rng);

/// Random mixture: sigma_ij ~ U[0.5, 2], mixed isothermal / power-law species,
/// reference densities ~ U[0.5, 1.5].
MixtureSpec random_mixture(Rng& rng, int num_species, int dimension,
                           double epsilon = 1.0);

/// Random nonzero frequency vector with components ~ U[-1, 1].
std::vector<double> random_frequency(int dimension, Rng& rng);

} // namespace mcdiff
