#pragma once

#include "heisring/curve.hpp"
#include "heisring/curves.hpp"
#include "heisring/errors.hpp"
#include "heisring/expression.hpp"
#include "heisring/heisenberg.hpp"
#include "heisring/jet.hpp"
#include "heisring/modulus.hpp"
#include "heisring/ode.hpp"
#include "heisring/profile.hpp"
#include "heisring/quadrature.hpp"
#include "heisring/revcoords.hpp"
#include "heisring/ring.hpp"
#include "heisring/surface.hpp"
