#pragma once

#include "error.hpp"
#include "poly.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"
#include "golay.hpp"
#include "codes.hpp"
#include "potentials.hpp"
#include "verify.hpp"
#include "report.hpp"
