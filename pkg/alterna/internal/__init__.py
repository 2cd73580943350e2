from alterna.internal.data_binding import *
