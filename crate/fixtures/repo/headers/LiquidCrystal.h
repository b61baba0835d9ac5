#ifndef LiquidCrystal_h
#define LiquidCrystal_h

// HD44780 character lcd driver, 4-bit and 8-bit modes.

#define LCD_CLEARDISPLAY 0x01
#define LCD_RETURNHOME 0x02
#define LCD_ENTRYMODESET 0x04
#define LCD_DISPLAYCONTROL 0x08
#define LCD_FUNCTIONSET 0x20

class LiquidCrystal {
public:
  LiquidCrystal(unsigned char rs, unsigned char enable,
                unsigned char d4, unsigned char d5,
                unsigned char d6, unsigned char d7);
  void begin(unsigned char cols, unsigned char rows);
  void clear();
  void home();
  void setCursor(unsigned char col, unsigned char row);
  void print(const char *text);
  void display();
  void noDisplay();
  void cursor();
  void noCursor();
  void blink();
  void noBlink();
  void scrollDisplayLeft();
  void scrollDisplayRight();
};

#endif
