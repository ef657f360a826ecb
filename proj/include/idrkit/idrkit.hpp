#pragma once
// Umbrella include.

#include "idrkit/canonical.hpp"
#include "idrkit/csv.hpp"
#include "idrkit/distribution.hpp"
#include "idrkit/indicators.hpp"
#include "idrkit/log.hpp"
#include "idrkit/manifest.hpp"
#include "idrkit/matrix.hpp"
#include "idrkit/overlay.hpp"
#include "idrkit/performance.hpp"
#include "idrkit/pipeline.hpp"
#include "idrkit/record_parser.hpp"
#include "idrkit/records.hpp"
#include "idrkit/simspace.hpp"
#include "idrkit/tables.hpp"
