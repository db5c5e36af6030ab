// Umbrella header.

#pragma once

#include "tfa/exponent.hpp"
#include "tfa/experiments.hpp"
#include "tfa/fourier.hpp"
#include "tfa/gabor.hpp"
#include "tfa/io.hpp"
#include "tfa/lattice.hpp"
#include "tfa/moderate.hpp"
#include "tfa/norms.hpp"
#include "tfa/regions.hpp"
#include "tfa/rihaczek.hpp"
#include "tfa/sequences.hpp"
#include "tfa/stft.hpp"
#include "tfa/verdict.hpp"
#include "tfa/weight.hpp"
