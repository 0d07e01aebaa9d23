/**
 * @file qpol.hpp
 * @brief Umbrella header for the numerical core (no JSON or CLI plumbing).
 */
#pragma once

#include "qpol/bloch_sphere.hpp"
#include "qpol/coherence_optimizer.hpp"
#include "qpol/errors.hpp"
#include "qpol/interference.hpp"
#include "qpol/mueller_calculus.hpp"
#include "qpol/numerics.hpp"
#include "qpol/polarization.hpp"
#include "qpol/speed_limit.hpp"
#include "qpol/version.hpp"
