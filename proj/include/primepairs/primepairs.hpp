#pragma once

#include "asymptotics.hpp"
#include "candidate_model.hpp"
#include "parallel.hpp"
#include "polignac.hpp"
#include "prediction.hpp"
#include "prime_engine.hpp"
#include "reports.hpp"
#include "twin_sieve.hpp"
