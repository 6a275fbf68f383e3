#pragma once

#include "heun/errors.hpp"
#include "heun/specfun.hpp"
#include "heun/tridiagonal.hpp"
#include "heun/quadrature.hpp"
#include "heun/heun_core.hpp"
#include "heun/transforms.hpp"
#include "heun/potentials.hpp"
#include "heun/orthopoly.hpp"
#include "heun/wavefunction.hpp"
#include "heun/verifier.hpp"
