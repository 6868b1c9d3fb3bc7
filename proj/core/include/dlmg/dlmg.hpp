#pragma once

#include "dlmg/csv.hpp"
#include "dlmg/density_matrix.hpp"
#include "dlmg/error.hpp"
#include "dlmg/hp.hpp"
#include "dlmg/lindblad.hpp"
#include "dlmg/models.hpp"
#include "dlmg/observables.hpp"
#include "dlmg/ode.hpp"
#include "dlmg/operators.hpp"
#include "dlmg/semiclassical.hpp"
#include "dlmg/spectrum.hpp"
