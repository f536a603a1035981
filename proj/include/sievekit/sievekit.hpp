#pragma once

#include "sievekit/arith.hpp"
#include "sievekit/brun.hpp"
#include "sievekit/error.hpp"
#include "sievekit/largesieve.hpp"
#include "sievekit/legendre.hpp"
#include "sievekit/problem.hpp"
#include "sievekit/rational.hpp"
#include "sievekit/report.hpp"
#include "sievekit/rosser.hpp"
#include "sievekit/selberg.hpp"
#include "sievekit/verify.hpp"

#ifndef SIEVEKIT_VERSION
#define SIEVEKIT_VERSION "0.1.0"
#endif
