from .analyzer import *
from .analyzer_factory import *
from .graph_file import *
from .reports import *
