# -*- coding: utf-8 -*-
"""Upper half-plane geometry of PSL2(Z)."""
