#pragma once

#include "helicore/grid.hpp"
#include "helicore/fft.hpp"
#include "helicore/field.hpp"
#include "helicore/helical.hpp"
#include "helicore/fields.hpp"
#include "helicore/operators.hpp"
#include "helicore/forms.hpp"
#include "helicore/identities.hpp"
#include "helicore/dynamics.hpp"
#include "helicore/curvature.hpp"
#include "helicore/io.hpp"
