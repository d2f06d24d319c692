#pragma once

#include "enrvar/relcore/builtin.hpp"
#include "enrvar/relcore/constructions.hpp"
#include "enrvar/relcore/horn.hpp"
#include "enrvar/relcore/models.hpp"
#include "enrvar/relcore/structure.hpp"
