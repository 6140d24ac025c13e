#ifndef WLSTATS_WLSTATS_HPP
#define WLSTATS_WLSTATS_HPP

#include "wlstats/corpus.hpp"
#include "wlstats/csv.hpp"
#include "wlstats/error.hpp"
#include "wlstats/frequency.hpp"
#include "wlstats/kde.hpp"
#include "wlstats/moments.hpp"
#include "wlstats/ngram.hpp"
#include "wlstats/report.hpp"
#include "wlstats/segment.hpp"
#include "wlstats/shuffle.hpp"
#include "wlstats/tokenizer.hpp"
#include "wlstats/types.hpp"

#endif  // WLSTATS_WLSTATS_HPP
