#pragma once

// Umbrella header: exact q-derangement polynomials of types A and B, their
// moments, and the numerical certificates of asymptotic normality.

#include "qderange/analysis.hpp"
#include "qderange/exact.hpp"
#include "qderange/family.hpp"
#include "qderange/integer.hpp"
#include "qderange/moments.hpp"
#include "qderange/permoracle.hpp"
#include "qderange/qpoly.hpp"
#include "qderange/qseries.hpp"
#include "qderange/rational.hpp"
#include "qderange/real.hpp"
#include "qderange/report.hpp"
