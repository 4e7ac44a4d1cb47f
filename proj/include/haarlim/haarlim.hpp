#pragma once
// Convenience include: the whole library.

#include "haarlim/config.hpp"
#include "haarlim/io.hpp"
#include "haarlim/laws.hpp"
#include "haarlim/model.hpp"
#include "haarlim/montecarlo.hpp"
#include "haarlim/ncpoly.hpp"
#include "haarlim/parallel.hpp"
#include "haarlim/perturb.hpp"
#include "haarlim/randmat.hpp"
#include "haarlim/verify.hpp"
