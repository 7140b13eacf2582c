from tests.utils.fixtures import *
