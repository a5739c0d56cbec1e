#pragma once

#include "satqr/diagnostics.hpp"
#include "satqr/errors.hpp"
#include "satqr/geolink.hpp"
#include "satqr/io.hpp"
#include "satqr/keyrate.hpp"
#include "satqr/link_model.hpp"
#include "satqr/params.hpp"
#include "satqr/simkernel.hpp"
#include "satqr/sweep.hpp"
#include "satqr/yield.hpp"
