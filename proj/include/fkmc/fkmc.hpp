#pragma once

// Umbrella header.
#include "fkmc/agents.hpp"
#include "fkmc/config.hpp"
#include "fkmc/engine.hpp"
#include "fkmc/features.hpp"
#include "fkmc/logio.hpp"
#include "fkmc/random.hpp"
#include "fkmc/rate_table.hpp"
#include "fkmc/record.hpp"
#include "fkmc/replay.hpp"
#include "fkmc/scheduler.hpp"
#include "fkmc/types.hpp"
#include "fkmc/world.hpp"
