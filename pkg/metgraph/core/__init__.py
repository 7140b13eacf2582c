from .generators import *
from .queries import *
from .refinement import *
from .weighted_graph import *
