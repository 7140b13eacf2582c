from tests.core.fixtures import *
