#pragma once

#include "expsum/baselines.hpp"
#include "expsum/common.hpp"
#include "expsum/fft.hpp"
#include "expsum/filter.hpp"
#include "expsum/io.hpp"
#include "expsum/model.hpp"
#include "expsum/multidim.hpp"
#include "expsum/recovery.hpp"
#include "expsum/scene.hpp"
#include "expsum/spectrum.hpp"
