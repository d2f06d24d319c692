#pragma once

#include "enrvar/dsl/dsl.hpp"
