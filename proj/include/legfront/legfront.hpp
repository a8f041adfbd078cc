#pragma once

#include "error.hpp"
#include "util.hpp"
#include "contact.hpp"
#include "front.hpp"
#include "zigzag.hpp"
#include "loose.hpp"
#include "singularity.hpp"
#include "sheaf.hpp"
#include "io.hpp"
#include "corpus.hpp"
