#pragma once

/// Umbrella header: the full mllint library.

#include "mllint/aggregate.hpp"
#include "mllint/config.hpp"
#include "mllint/engine.hpp"
#include "mllint/git.hpp"
#include "mllint/process.hpp"
#include "mllint/registry.hpp"
#include "mllint/render.hpp"
#include "mllint/report.hpp"
#include "mllint/rule.hpp"
#include "mllint/rules/ci.hpp"
#include "mllint/rules/code_quality.hpp"
#include "mllint/rules/custom.hpp"
#include "mllint/rules/dependencies.hpp"
#include "mllint/rules/testing.hpp"
#include "mllint/rules/version_control.hpp"
#include "mllint/scan.hpp"
#include "mllint/strings.hpp"
#include "mllint/terminal.hpp"
#include "mllint/toml.hpp"
#include "mllint/version.hpp"
#include "mllint/weights.hpp"
#include "mllint/xml.hpp"
#include "mllint/yaml.hpp"
