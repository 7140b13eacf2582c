from .measure import *
from .operators import *
from .piecewise_poly import *
