#ifndef Keypad_h
#define Keypad_h

// Matrix keypad scanner with debouncing and multi-key support.

#define NO_KEY '\0'

typedef enum { IDLE, PRESSED, HOLD, RELEASED } KeyState;

class Keypad {
public:
  Keypad(char *userKeymap, unsigned char *row, unsigned char *col,
         unsigned char numRows, unsigned char numCols);
  char getKey();
  char waitForKey();
  KeyState getState();
  void setDebounceTime(unsigned int ms);
  void setHoldTime(unsigned int ms);
  bool keyStateChanged();
};

#endif
