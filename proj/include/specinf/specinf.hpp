#pragma once

// Umbrella header for the whole library.

#include "specinf/cli.hpp"
#include "specinf/config.hpp"
#include "specinf/dispersion.hpp"
#include "specinf/errors.hpp"
#include "specinf/fft.hpp"
#include "specinf/geometry.hpp"
#include "specinf/grid.hpp"
#include "specinf/hamiltonian.hpp"
#include "specinf/lanczos.hpp"
#include "specinf/localization.hpp"
#include "specinf/operators.hpp"
#include "specinf/oracle.hpp"
#include "specinf/potential.hpp"
#include "specinf/radial_function.hpp"
#include "specinf/report.hpp"
#include "specinf/rng.hpp"
#include "specinf/selfcheck.hpp"
#include "specinf/spectral.hpp"
