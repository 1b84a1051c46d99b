from ._qibound import *  # noqa: F401,F403
