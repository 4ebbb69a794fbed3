#pragma once

// Umbrella header: the full persistence-based main-path toolkit.

#include "mainpath/analysis.hpp"
#include "mainpath/baseline.hpp"
#include "mainpath/citation_network.hpp"
#include "mainpath/csv.hpp"
#include "mainpath/errors.hpp"
#include "mainpath/export.hpp"
#include "mainpath/format.hpp"
#include "mainpath/layering.hpp"
#include "mainpath/main_paths.hpp"
#include "mainpath/persistence.hpp"
