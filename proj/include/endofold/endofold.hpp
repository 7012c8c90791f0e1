#pragma once

#include "endofold/cli.hpp"
