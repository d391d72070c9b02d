#pragma once

#include "gapidx/consecutive_finder.hpp"
#include "gapidx/error.hpp"
#include "gapidx/gap_count_index.hpp"
#include "gapidx/oracle.hpp"
#include "gapidx/range_successor.hpp"
#include "gapidx/report_index.hpp"
#include "gapidx/sdj_reduction.hpp"
#include "gapidx/serialize.hpp"
#include "gapidx/text_index.hpp"
#include "gapidx/types.hpp"
#include "gapidx/zero_beta_index.hpp"
