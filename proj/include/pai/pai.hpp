// Umbrella header.
#pragma once

#include "pai/analysis.hpp"
#include "pai/correlation.hpp"
#include "pai/fixpoint.hpp"
#include "pai/ingest.hpp"
#include "pai/io.hpp"
#include "pai/matrix.hpp"
#include "pai/parse.hpp"
#include "pai/record.hpp"
#include "pai/similarity.hpp"
#include "pai/stats.hpp"
#include "pai/types.hpp"
#include "pai/variants.hpp"
