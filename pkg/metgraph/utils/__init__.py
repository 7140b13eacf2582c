from .canonical import *
from .graph_summary import *
from .kirchhoff import *
from .potential import *
from .resistance_reduction import *
from .spectral import *
