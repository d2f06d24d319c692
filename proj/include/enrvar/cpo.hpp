#pragma once

#include "enrvar/cpo/presentation.hpp"
