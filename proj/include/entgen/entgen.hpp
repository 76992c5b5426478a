// entgen.hpp — umbrella header

#pragma once

#include "entgen/baths.hpp"
#include "entgen/coeffs.hpp"
#include "entgen/config.hpp"
#include "entgen/criterion.hpp"
#include "entgen/csv.hpp"
#include "entgen/dynamics.hpp"
#include "entgen/equal_time.hpp"
#include "entgen/nelder_mead.hpp"
#include "entgen/oracle.hpp"
#include "entgen/parallel.hpp"
#include "entgen/qlin.hpp"
#include "entgen/rng.hpp"
