#ifndef ORDSEV_ORDSEV_HPP
#define ORDSEV_ORDSEV_HPP

// Umbrella header.
#include "ordsev/bundled.hpp"
#include "ordsev/contingency.hpp"
#include "ordsev/csv.hpp"
#include "ordsev/dataset.hpp"
#include "ordsev/design.hpp"
#include "ordsev/error.hpp"
#include "ordsev/format.hpp"
#include "ordsev/inference.hpp"
#include "ordsev/logistic.hpp"
#include "ordsev/margins.hpp"
#include "ordsev/ologit.hpp"
#include "ordsev/rng.hpp"
#include "ordsev/schema.hpp"
#include "ordsev/special.hpp"
#include "ordsev/synth.hpp"

#endif  // ORDSEV_ORDSEV_HPP
