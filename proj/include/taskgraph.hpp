#pragma once

// Umbrella header for the whole library.

#include "taskgraph/action.hpp"
#include "taskgraph/agents.hpp"
#include "taskgraph/app_registry.hpp"
#include "taskgraph/checks.hpp"
#include "taskgraph/complexity.hpp"
#include "taskgraph/composer.hpp"
#include "taskgraph/error.hpp"
#include "taskgraph/eval_function.hpp"
#include "taskgraph/evaluator.hpp"
#include "taskgraph/event_log.hpp"
#include "taskgraph/graph.hpp"
#include "taskgraph/harness.hpp"
#include "taskgraph/instruction.hpp"
#include "taskgraph/json_io.hpp"
#include "taskgraph/metrics.hpp"
#include "taskgraph/rational.hpp"
#include "taskgraph/resource.hpp"
#include "taskgraph/subtask.hpp"
