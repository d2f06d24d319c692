#pragma once

#include "enrvar/translate/translate.hpp"
