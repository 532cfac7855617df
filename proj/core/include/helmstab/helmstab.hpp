#pragma once

#include "helmstab/greens.hpp"
#include "helmstab/inversion.hpp"
#include "helmstab/io.hpp"
#include "helmstab/medium.hpp"
#include "helmstab/quadrature.hpp"
#include "helmstab/sources.hpp"
#include "helmstab/stability.hpp"
#include "helmstab/timedomain.hpp"
