#pragma once

#include "jetsum/arcs.hpp"
#include "jetsum/counting.hpp"
#include "jetsum/errors.hpp"
#include "jetsum/expsum.hpp"
#include "jetsum/extfield.hpp"
#include "jetsum/field.hpp"
#include "jetsum/form.hpp"
#include "jetsum/jets.hpp"
#include "jetsum/laurent.hpp"
#include "jetsum/parse.hpp"
#include "jetsum/rootsum.hpp"
#include "jetsum/util.hpp"
#include "jetsum/verify.hpp"
