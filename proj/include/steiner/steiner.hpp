#pragma once

#include "steiner/face.hpp"
#include "steiner/complex.hpp"
#include "steiner/neighborhood.hpp"
#include "steiner/rng.hpp"
#include "steiner/sampler.hpp"
#include "steiner/arboreal.hpp"
#include "steiner/integer_matrix.hpp"
#include "steiner/spectra.hpp"
#include "steiner/sst.hpp"
#include "steiner/limit_law.hpp"
#include "steiner/experiments.hpp"
